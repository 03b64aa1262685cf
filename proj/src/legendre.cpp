#include "henon/legendre.hpp"

#include <cmath>
#include <numbers>

namespace henon {

PolySeries<Rational> shifted_legendre(int n)
{
    if (n < 0)
        throw Error("bad-index", "Legendre index must be nonnegative");
    // Q_n(x) = sum_k (-1)^{n+k} C(n,k) C(n+k,k) x^k, the expansion of the
    // Rodrigues formula (-1)^n/n! d^n/dx^n [x^n (1-x)^n].
    PolySeries<Rational> q(1, n);
    for (int k = 0; k <= n; ++k) {
        BigInt c = binomial(n, k) * binomial(n + k, k);
        if ((n + k) % 2 != 0)
            c = -c;
        q.at(k) = Rational(c);
    }
    return q;
}

BasisFunction build_phi(int n)
{
    if (n < 1)
        throw Error("bad-index", "basis functions are indexed from 1");
    BasisFunction f;
    f.n = n;
    f.legendre = shifted_legendre(n);
    PolySeries<Rational> bubble(1, 2); // x (1 - x)
    bubble.at(1) = 1;
    bubble.at(2) = -1;
    f.phi = bubble * f.legendre.derivative(0);
    f.phi *= Rational(1, n * (n + 1));
    return f;
}

std::string to_string(SpaceTag tag)
{
    switch (tag) {
    case SpaceTag::Full: return "Full";
    case SpaceTag::V1: return "V1";
    case SpaceTag::V2: return "V2";
    case SpaceTag::V3: return "V3";
    case SpaceTag::V4: return "V4";
    }
    return "?";
}

SpaceTag parse_space(const std::string& name)
{
    if (name == "Full" || name == "full" || name == "V")
        return SpaceTag::Full;
    if (name == "V1")
        return SpaceTag::V1;
    if (name == "V2")
        return SpaceTag::V2;
    if (name == "V3")
        return SpaceTag::V3;
    if (name == "V4")
        return SpaceTag::V4;
    throw Error("unsupported-space", "unknown symmetry space '" + name + "'");
}

void SymmetrySpace::validate() const
{
    if (N != 1 && N != 2)
        throw Error("bad-dimension", "N must be 1 or 2");
    if (M < 1)
        throw Error("bad-order", "truncation order must be positive");
    if (N == 1 && tag != SpaceTag::Full && tag != SpaceTag::V1)
        throw Error("unsupported-space", to_string(tag) + " is only defined on the square");
}

std::vector<BasisIndex> index_set(const SymmetrySpace& space)
{
    space.validate();
    const int M = space.M;
    std::vector<BasisIndex> out;
    if (space.N == 1) {
        const int step = space.tag == SpaceTag::V1 ? 2 : 1;
        for (int i = 1; i <= M; i += step)
            out.push_back({i, 0, false});
        return out;
    }
    switch (space.tag) {
    case SpaceTag::Full:
        for (int i = 1; i <= M; ++i)
            for (int j = 1; j <= M; ++j)
                out.push_back({i, j, false});
        break;
    case SpaceTag::V1:
        for (int i = 1; i <= M; i += 2)
            for (int j = 1; j <= M; ++j)
                out.push_back({i, j, false});
        break;
    case SpaceTag::V2:
        for (int i = 1; i <= M; ++i)
            for (int j = i; j <= M; ++j)
                out.push_back({i, j, true});
        break;
    case SpaceTag::V3:
        for (int i = 1; i <= M; ++i)
            for (int j = i; j <= M; j += 2)
                out.push_back({i, j, true}); // i, j share parity
        break;
    case SpaceTag::V4:
        for (int i = 1; i <= M; i += 2)
            for (int j = i; j <= M; j += 2)
                out.push_back({i, j, true});
        break;
    }
    return out;
}

std::size_t space_dimension(const SymmetrySpace& space)
{
    return index_set(space).size();
}

std::vector<TensorTerm> tensor_terms(const BasisIndex& b)
{
    if (!b.psi)
        return {{b.i, b.j, 1.0}};
    if (b.i == b.j)
        return {{b.i, b.i, 2.0}};
    return {{b.i, b.j, 1.0}, {b.j, b.i, 1.0}};
}

std::vector<double> to_tensor(const SymmetrySpace& space, std::span<const double> coeffs)
{
    const auto idx = index_set(space);
    if (coeffs.size() != idx.size())
        throw Error("shape-mismatch", "coefficient vector length does not match the index set");
    const int M = space.M;
    std::vector<double> u(static_cast<std::size_t>(space.N == 1 ? M : M * M), 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (const auto& t : tensor_terms(idx[k])) {
            const std::size_t pos = space.N == 1 ? static_cast<std::size_t>(t.i - 1)
                                                 : static_cast<std::size_t>((t.i - 1) * M + (t.j - 1));
            u[pos] += t.coef * coeffs[k]; // each tensor slot is hit by one basis element
        }
    return u;
}

PolySeries<Rational> assemble_function(const SymmetrySpace& space, std::span<const double> coeffs)
{
    const auto u = to_tensor(space, coeffs);
    const int M = space.M;
    std::vector<PolySeries<Rational>> phis;
    for (int n = 1; n <= M; ++n)
        phis.push_back(build_phi(n).phi);
    if (space.N == 1) {
        PolySeries<Rational> r(1, M + 1);
        for (int i = 1; i <= M; ++i)
            if (u[i - 1] != 0.0)
                r += phis[i - 1] * to_rational(u[i - 1]);
        return r;
    }
    PolySeries<Rational> r(2, M + 1, M + 1);
    for (int i = 1; i <= M; ++i)
        for (int j = 1; j <= M; ++j) {
            const double c = u[static_cast<std::size_t>((i - 1) * M + (j - 1))];
            if (c != 0.0)
                r += tensor(phis[i - 1], phis[j - 1]) * to_rational(c);
        }
    return r;
}

Rational integrate_exact(const PolySeries<Rational>& p)
{
    Rational s = 0;
    for (int a = 0; a <= p.degree_x(); ++a)
        for (int b = 0; b <= p.degree_y(); ++b) {
            const Rational& c = p.at(a, b);
            if (c != 0)
                s += c / Rational((a + 1) * (b + 1));
        }
    return s;
}

Interval integrate_poly(const PolySeries<Rational>& p)
{
    return enclose(integrate_exact(p));
}

Interval integrate_poly(const PolySeries<Interval>& p)
{
    Interval s(0.0);
    for (int a = 0; a <= p.degree_x(); ++a)
        for (int b = 0; b <= p.degree_y(); ++b)
            s += p.at(a, b) / Interval(static_cast<double>((a + 1) * (b + 1)));
    return s;
}

double integrate_poly(const PolySeries<double>& p)
{
    double s = 0.0;
    for (int a = 0; a <= p.degree_x(); ++a)
        for (int b = 0; b <= p.degree_y(); ++b)
            s += p.at(a, b) / static_cast<double>((a + 1) * (b + 1));
    return s;
}

PolySeries<Rational> weight_poly(const ProblemSpec& spec)
{
    spec.validate();
    if (std::floor(spec.l) != spec.l || std::fmod(spec.l, 2.0) != 0.0)
        throw Error("unsupported-in-verified-mode", "the weight is a polynomial only for even integer l");
    // r^2 = (x - 1/2)^2 (+ (y - 1/2)^2)
    PolySeries<Rational> r2(spec.N, 2, spec.N == 2 ? 2 : 0);
    r2.at(0, 0) = Rational(spec.N, 4);
    r2.at(1, 0) = -1;
    r2.at(2, 0) = 1;
    if (spec.N == 2) {
        r2.at(0, 1) = -1;
        r2.at(0, 2) = 1;
    }
    PolySeries<Rational> w = PolySeries<Rational>::constant(spec.N, Rational(1));
    for (int k = 0; k < spec.l_int() / 2; ++k)
        w = w * r2;
    return w;
}

double weight_value(const ProblemSpec& spec, double x, double y)
{
    if (spec.l == 0.0)
        return 1.0;
    double r2 = (x - 0.5) * (x - 0.5);
    if (spec.N == 2)
        r2 += (y - 0.5) * (y - 0.5);
    if (std::floor(spec.l) == spec.l && std::fmod(spec.l, 2.0) == 0.0) {
        double w = 1.0;
        for (int k = 0; k < spec.l_int() / 2; ++k)
            w *= r2;
        return w;
    }
    return std::pow(r2, 0.5 * spec.l);
}

void legendre_values(double t, int nmax, std::span<double> out)
{
    out[0] = 1.0;
    if (nmax >= 1)
        out[1] = t;
    for (int n = 1; n < nmax; ++n)
        out[n + 1] = ((2.0 * n + 1.0) * t * out[n] - n * out[n - 1]) / (n + 1.0);
}

void phi_values(double x, int M, std::span<double> phi, std::span<double> dphi)
{
    std::vector<double> P(static_cast<std::size_t>(M + 2));
    legendre_values(2.0 * x - 1.0, M + 1, P);
    for (int n = 1; n <= M; ++n) {
        phi[n - 1] = (P[n - 1] - P[n + 1]) / (2.0 * (2.0 * n + 1.0));
        dphi[n - 1] = -P[n];
    }
}

QuadratureRule gauss_legendre(int n)
{
    if (n < 1)
        throw Error("bad-order", "quadrature needs at least one node");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = t;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = t;
                p0 = 1.0;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        // t is the i-th largest root; map [-1,1] -> [0,1].
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + t);
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - t);
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
        rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
    }
    return rule;
}

} // namespace henon
