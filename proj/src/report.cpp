#include "henon/report.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unistd.h>

namespace henon {

std::string hex_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double parse_hex_double(const std::string& s)
{
    if (s.empty())
        throw Error("bad-solution-file", "empty number");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw Error("bad-solution-file", "cannot parse number '" + s + "'");
    return v;
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("io-error", "cannot open " + tmp);
        out << content;
        out.flush();
        if (!out)
            throw Error("io-error", "cannot write " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("io-error", "cannot rename to " + path + ": " + ec.message());
    }
}

namespace {

std::string utc_now()
{
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string index_tuple(const BasisIndex& b, int N)
{
    if (N == 1)
        return std::to_string(b.i);
    return std::string(b.psi ? "s" : "") + std::to_string(b.i) + "," + std::to_string(b.j);
}

} // namespace

std::string format_solution(const GalerkinSolution& u, const std::string& created)
{
    std::ostringstream os;
    os << "N " << u.spec.N << "\n";
    os << "l " << exact_decimal(u.spec.l) << "\n";
    os << "p " << exact_decimal(u.spec.p) << "\n";
    os << "x0 " << (u.spec.N == 1 ? "0.5" : "0.5,0.5") << "\n";
    os << "space " << to_string(u.space.tag) << "\n";
    os << "M " << u.space.M << "\n";
    os << "created " << created << "\n";
    os << "branch_id " << (u.branch_id.empty() ? "-" : u.branch_id) << "\n";
    const auto idx = index_set(u.space);
    for (std::size_t k = 0; k < idx.size(); ++k)
        os << index_tuple(idx[k], u.space.N) << " " << hex_double(u.coeffs[k]) << "\n";
    return os.str();
}

void save_solution(const std::string& path, const GalerkinSolution& u)
{
    u.validate();
    write_file_atomic(path, format_solution(u, utc_now()));
}

GalerkinSolution parse_solution(std::istream& in)
{
    std::map<std::string, std::string> head;
    std::vector<std::pair<std::string, std::string>> body;
    const char* keys[] = {"N", "l", "p", "x0", "space", "M", "created", "branch_id"};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a >> b) || (ls >> extra))
            throw Error("bad-solution-file", "malformed line '" + line + "'");
        if (std::find(std::begin(keys), std::end(keys), a) != std::end(keys)) {
            if (!body.empty() || head.count(a))
                throw Error("bad-solution-file", "misplaced header key " + a);
            head[a] = b;
        } else {
            body.emplace_back(a, b);
        }
    }
    for (const char* k : {"N", "l", "p", "space", "M"})
        if (!head.count(k))
            throw Error("bad-solution-file", std::string("missing header key ") + k);
    GalerkinSolution u;
    try {
        u.spec.N = std::stoi(head["N"]);
        u.spec.l = std::stod(head["l"]);
        u.spec.p = std::stod(head["p"]);
        u.space = {parse_space(head["space"]), u.spec.N, std::stoi(head["M"])};
    } catch (const std::logic_error&) {
        throw Error("bad-solution-file", "bad header value");
    }
    try {
        u.spec.validate();
        u.space.validate();
    } catch (const Error& e) {
        throw Error("bad-solution-file", e.what());
    }
    if (head.count("x0") && head["x0"] != (u.spec.N == 1 ? "0.5" : "0.5,0.5"))
        throw Error("bad-solution-file", "only the box centre is supported as x0");
    if (head.count("branch_id") && head["branch_id"] != "-")
        u.branch_id = head["branch_id"];
    const auto idx = index_set(u.space);
    if (body.size() != idx.size())
        throw Error("bad-solution-file", "expected " + std::to_string(idx.size()) + " coefficients, got " + std::to_string(body.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (body[k].first != index_tuple(idx[k], u.spec.N))
            throw Error("bad-solution-file", "unexpected index " + body[k].first);
        u.coeffs.push_back(parse_hex_double(body[k].second));
    }
    u.converged = true;
    return u;
}

GalerkinSolution load_solution(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("io-error", "cannot open " + path);
    return parse_solution(in);
}

std::string curve_csv(const std::vector<CurvePoint>& points)
{
    std::ostringstream os;
    os << "l,branch_id,h10_norm,peak,newton_iters,converged\n";
    os << std::setprecision(17);
    for (const auto& p : points)
        os << exact_decimal(p.l) << "," << p.branch_id << "," << p.h10_norm << "," << p.peak << "," << p.newton_iters << ","
           << (p.converged ? 1 : 0) << "\n";
    return os.str();
}

std::string curve_svg(const std::vector<CurvePoint>& points, CurveMetric metric)
{
    const double W = 640, H = 420, m = 50;
    std::map<std::string, std::vector<std::pair<double, double>>> lines;
    double x0 = INFINITY, x1 = -INFINITY, y0 = 0, y1 = -INFINITY;
    for (const auto& p : points) {
        if (!p.converged)
            continue;
        const double v = metric == CurveMetric::Peak ? p.peak : p.h10_norm;
        lines[p.branch_id].emplace_back(p.l, v);
        x0 = std::min(x0, p.l);
        x1 = std::max(x1, p.l);
        y1 = std::max(y1, v);
    }
    if (lines.empty()) {
        x0 = 0;
        x1 = 1;
        y1 = 1;
    }
    if (x1 <= x0)
        x1 = x0 + 1;
    if (y1 <= y0)
        y1 = y0 + 1;
    const auto X = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
    const auto Y = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream os;
    os << std::setprecision(6);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">l</text>\n";
    os << "<text x=\"14\" y=\"" << H / 2 << "\" transform=\"rotate(-90 14 " << H / 2 << ")\" text-anchor=\"middle\">"
       << (metric == CurveMetric::Peak ? "peak" : "H10 norm") << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = x0 + (x1 - x0) * t / 4, yv = y0 + (y1 - y0) * t / 4;
        os << "<text x=\"" << X(xv) << "\" y=\"" << H - m + 16 << "\" font-size=\"11\" text-anchor=\"middle\">" << xv << "</text>\n";
        os << "<text x=\"" << m - 4 << "\" y=\"" << Y(yv) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << yv << "</text>\n";
    }
    int c = 0;
    for (const auto& [id, pts] : lines) {
        const char* col = colors[c++ % 6];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts)
            os << X(x) << "," << Y(y) << " ";
        os << "\"/>\n";
        os << "<text x=\"" << W - m + 4 << "\" y=\"" << m + 14 * c << "\" font-size=\"11\" fill=\"" << col << "\">" << id << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

std::string iv(const Interval& x) { return to_string(x, 9); }

} // namespace

std::string certificate_report(const GalerkinSolution& u, const VerificationReport& rep)
{
    std::ostringstream os;
    const auto& c = rep.constants;
    const auto& nk = rep.nk;
    os << "N = " << u.spec.N << "\n";
    os << "l = " << exact_decimal(u.spec.l) << "\n";
    os << "p = " << exact_decimal(u.spec.p) << "\n";
    os << "space = " << to_string(u.space.tag) << "\n";
    os << "M_u = " << u.space.M << "\n";
    os << "M = " << rep.M_eig << "\n";
    os << "eig_space = " << to_string(rep.eig_space) << "\n";
    os << "tau = " << iv(c.tau) << "\n";
    os << "C2 = " << iv(c.C2) << "\n";
    os << "Cp1 = " << iv(c.Cp1) << "\n";
    os << "CM = " << iv(c.CM) << "\n";
    os << "CMtau = " << iv(c.CMtau) << "\n";
    os << "d = " << iv(c.d) << "\n";
    os << "Wsup = " << iv(c.Wsup) << (c.wsup_warning ? "  (cell budget hit)" : "") << "\n";
    os << "h10_norm = " << iv(rep.norms.h10) << "\n";
    os << "Lp1_norm = " << iv(rep.norms.lp1) << "\n";
    os << "residual = " << iv(nk.residual) << "\n";
    if (rep.inverse) {
        os << "mu0 = " << iv(rep.inverse->mu0) << "\n";
        os << "K = " << iv(nk.K) << "\n";
        os << "K_from = "
           << (rep.inverse->contributing_index > 0 ? "lambda_" + std::to_string(rep.inverse->contributing_index)
                                                    : rep.inverse->contributing_index == 0 ? std::string("one") : std::string("tail"))
           << "\n";
    }
    if (rep.corrected) {
        const auto& lam = rep.corrected->lambda;
        for (std::size_t k = 0; k < std::min<std::size_t>(5, lam.size()); ++k)
            os << "lambda_" << k + 1 << " = " << iv(lam[k]) << "\n";
        os << "lambda_tail_lower = " << format_down(rep.corrected->tail_lower.lo(), 9) << "\n";
    }
    if (nk.proven || nk.reason == "alpha-beta") {
        os << "L = " << iv(nk.L) << "\n";
        os << "alpha = " << iv(nk.alpha) << "\n";
        os << "beta = " << iv(nk.beta) << "\n";
        os << "delta = " << format_up(nk.delta, 9) << "\n";
    }
    if (nk.proven) {
        os << "rho = " << iv(nk.rho) << "\n";
        os << "unique_radius = " << iv(nk.unique_radius) << "\n";
        os << "r_A = " << iv(nk.rA) << "\n";
        os << "r_R = " << iv(nk.rR) << "\n";
    }
    os << "peak = " << iv(rep.norms.peak) << (rep.norms.peak_warning ? "  (cell budget hit)" : "") << "\n";
    os << "peak_upper = " << format_up(rep.norms.peak.hi(), 7) << "\n";
    os << "approx_peak = " << std::setprecision(9) << approx_peak(u) << "  approx\n";
    os << "verdict = " << (nk.proven ? "Proven" : "Failed(" + nk.reason + ")") << "\n";
    return os.str();
}

} // namespace henon
