#pragma once

// Solution files, curve CSV/SVG output and the plain-text certificate report.

#include "henon/galerkin.hpp"
#include "henon/nk_verifier.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace henon {

// Header "key value" lines (N, l, p, x0, space, M, created, branch_id), then
// one "index-tuple value" line per coefficient with the value as a hex float.
// Writes go to a temporary file that is renamed over the target.
void save_solution(const std::string& path, const GalerkinSolution& u);
// Throws henon::Error("bad-solution-file") on malformed input.
GalerkinSolution load_solution(const std::string& path);

std::string format_solution(const GalerkinSolution& u, const std::string& created);
GalerkinSolution parse_solution(std::istream& in);

// Atomic write-temp-then-rename.
void write_file_atomic(const std::string& path, const std::string& content);

// Binary64 hexadecimal literal, e.g. 0x1.8p+1.
std::string hex_double(double x);
double parse_hex_double(const std::string& s);

std::string curve_csv(const std::vector<CurvePoint>& points);

enum class CurveMetric { Peak, Norm };
// Minimal plot: axes, one polyline per branch_id.
std::string curve_svg(const std::vector<CurvePoint>& points, CurveMetric metric);

// "key = value" lines; rigorous values show both endpoints, diagnostics are
// marked approx.
std::string certificate_report(const GalerkinSolution& u, const VerificationReport& rep);

} // namespace henon
