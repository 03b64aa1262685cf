#pragma once

// Basis functions phi_n(x) = x(1-x) Q_n'(x) / (n(n+1)) built from the shifted
// Legendre polynomials Q_n, the symmetry-restricted index sets, and exact
// integration over the unit box.
//
// Useful identities (t = 2x - 1, P_n the Legendre polynomial on [-1,1]):
//   Q_n(x)    = P_n(t)
//   phi_n'(x) = -Q_n(x)
//   phi_n(x)  = (P_{n-1}(t) - P_{n+1}(t)) / (2(2n+1))
// so (phi_i', phi_j') = delta_ij / (2i+1), |phi_n'| <= 1 and |phi_n| <= 1/(2n+1).

#include "henon/interval.hpp"
#include "henon/poly.hpp"
#include "henon/problem.hpp"
#include "henon/rational.hpp"

#include <span>
#include <string>
#include <vector>

namespace henon {

struct BasisFunction {
    int n = 1;
    PolySeries<Rational> phi;      // exact monomial coefficients
    PolySeries<Rational> legendre; // Q_n, kept from the construction
};

PolySeries<Rational> shifted_legendre(int n);
BasisFunction build_phi(int n);

enum class SpaceTag { Full, V1, V2, V3, V4 };

std::string to_string(SpaceTag tag);
// Throws henon::Error("unsupported-space") on unknown names.
SpaceTag parse_space(const std::string& name);

struct SymmetrySpace {
    SpaceTag tag = SpaceTag::Full;
    int N = 1;
    int M = 2;

    // V2..V4 exist only on the square; M >= 1.
    void validate() const;
};

// One basis element: phi_i (N = 1), phi_i(x) phi_j(y), or
// psi_ij = phi_i(x) phi_j(y) + phi_j(x) phi_i(y).
struct BasisIndex {
    int i = 1;
    int j = 0;
    bool psi = false;

    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

struct TensorTerm {
    int i;
    int j;
    double coef;
};

std::vector<BasisIndex> index_set(const SymmetrySpace& space);
std::size_t space_dimension(const SymmetrySpace& space);
std::vector<TensorTerm> tensor_terms(const BasisIndex& b);

// Tensor coefficients of sum_k c_k b_k in the phi_i (N=1) or phi_i(x)phi_j(y)
// (N=2, row-major M x M, entry (i-1)*M + (j-1)) basis.  Exact.
std::vector<double> to_tensor(const SymmetrySpace& space, std::span<const double> coeffs);

// Throws henon::Error("shape-mismatch") if coeffs has the wrong length.
PolySeries<Rational> assemble_function(const SymmetrySpace& space, std::span<const double> coeffs);

// Integral over (0,1)^N.
Rational integrate_exact(const PolySeries<Rational>& p);
Interval integrate_poly(const PolySeries<Rational>& p);
Interval integrate_poly(const PolySeries<Interval>& p);
double integrate_poly(const PolySeries<double>& p);

// |x - x0|^l as a polynomial; l must be a nonnegative even integer
// (henon::Error("unsupported-in-verified-mode") otherwise).
PolySeries<Rational> weight_poly(const ProblemSpec& spec);

// Floating evaluation of |x - x0|^l for any l >= 0.
double weight_value(const ProblemSpec& spec, double x, double y = 0.5);

// P_0(t) .. P_nmax(t) by the three-term recurrence.
void legendre_values(double t, int nmax, std::span<double> out);

// phi_1(x) .. phi_M(x) and their derivatives at x.
void phi_values(double x, int M, std::span<double> phi, std::span<double> dphi);

// Gauss-Legendre rule with n nodes on [0, 1]; exact for degree <= 2n - 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

} // namespace henon
