#include "henon/constants.hpp"

#include <cmath>

namespace henon {

namespace {

// a^e for a >= 0 with integer shortcut
Interval power(const Interval& a, double e)
{
    if (e == std::floor(e) && std::fabs(e) < 1000)
        return e >= 0 ? pow(a, static_cast<int>(e)) : Interval(1.0) / pow(a, static_cast<int>(-e));
    if (a.hi() == 0)
        return Interval(0.0);
    if (a.lo() <= 0)
        return Interval(0.0, powf(Interval(a.hi()), Interval(e)).hi());
    return powf(a, Interval(e));
}

} // namespace

Interval choose_tau(std::optional<double> override_value)
{
    if (!override_value)
        return Interval(next_after_up(0.0));
    if (!(*override_value > 0) || !std::isfinite(*override_value))
        throw Error("invalid-tau", "tau must be a positive finite number");
    return Interval(*override_value);
}

Interval embed_C2(int N, const Interval& tau)
{
    if (N != 1 && N != 2)
        throw Error("bad-dimension", "N must be 1 or 2");
    return Interval(1.0) / sqrt(N * sqr(pi()) + tau);
}

Interval embed_Cp_1D(double p, const Interval& tau)
{
    if (!(p > 2))
        throw Error("domain", "embed_Cp_1D needs p > 2");
    const Interval eps = Interval(2.0) / Interval(p);
    const Interval rho = sqr(pi());
    const Interval one(1.0);
    const Interval quarter = Interval(0.25);
    auto branch1 = [&] {
        return Interval(1.0) / sqrt(Interval(2.0)) * powf(one - eps, quarter * (one - eps)) *
               powf(one + eps, quarter * (one + eps)) / powf(tau, quarter * (one + eps));
    };
    auto branch2 = [&] { return powf(rho, quarter * (one - eps)) / sqrt(rho + tau); };
    const Interval thr = tau * (one - eps) / (one + eps);
    if (rho.hi() <= thr.lo())
        return branch1();
    if (rho.lo() > thr.hi())
        return branch2();
    // undecided predicate: either branch may apply
    const Interval a = branch1(), b = branch2();
    return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval embed_Cp_ND(int N, double p)
{
    if (N != 2)
        throw Error("domain", "embed_Cp_ND is implemented for N = 2");
    if (!(p > 2) || !std::isfinite(p))
        throw Error("domain", "embed_Cp_ND needs 2 < p < inf");
    const Interval n(static_cast<double>(N));
    const Interval q = n * Interval(p) / (n + Interval(p));
    const Interval one(1.0);
    const Interval nq = n / q;
    const Interval g = gamma(one + n / Interval(2.0)) * gamma(n) / (gamma(nq) * gamma(one + n - nq));
    const Interval T = one / sqrt(pi()) * powf(n, -(one / q)) * powf((q - one) / (n - q), one - one / q) *
                       powf(g, one / n);
    // |Omega| = 1, so the prefactor |Omega|^{(2-q)/(2q)} is 1
    return T;
}

Interval embed_Cp(int N, double p, const Interval& tau)
{
    if (p == 2)
        return embed_C2(N, tau);
    return N == 1 ? embed_Cp_1D(p, tau) : embed_Cp_ND(N, p);
}

Interval proj_CM(int M)
{
    if (M < 2)
        throw Error("domain", "proj_CM needs M >= 2");
    const Interval m(static_cast<double>(M));
    auto lin = [&](double a, double b) { return Interval(a) * m + Interval(b); };
    const Interval one(1.0);
    const Interval t1 = one / (Interval(2.0) * lin(2, 1) * lin(2, 5));
    const Interval t2 = one / (Interval(4.0) * lin(2, 5) * sqrt(lin(2, 3)) * sqrt(lin(2, 7)));
    const Interval t3 = one / (Interval(2.0) * lin(2, 5) * lin(2, 9));
    const Interval t4 = one / (Interval(4.0) * lin(2, 9) * sqrt(lin(2, 7)) * sqrt(lin(2, 11)));
    return sqrt(max(t1 + t2, t2 + t3 + t4));
}

Interval proj_CMtau(int M, const Interval& tau)
{
    const Interval c = proj_CM(M);
    return c * sqrt(Interval(1.0) + tau * sqr(c));
}

Interval weight_d(const ProblemSpec& spec)
{
    spec.validate();
    if (spec.l == 0)
        return Interval(1.0);
    // farthest point from the centre is a corner: |x - x0|^2 = N/4
    const Interval r2 = Interval(static_cast<double>(spec.N)) / Interval(4.0);
    return power(r2, spec.l / 2);
}

namespace {

// w = |x - x0|^l and its first two derivatives over a box (even integer l).
struct WeightJet {
    Interval w, wx, wy, wxx, wxy, wyy;
};

WeightJet weight_jet(int N, int l, const Interval& X, const Interval& Y)
{
    WeightJet j{Interval(1.0), Interval(0.0), Interval(0.0), Interval(0.0), Interval(0.0), Interval(0.0)};
    if (l == 0)
        return j;
    const Interval dx = X - Interval(0.5);
    if (N == 1) {
        j.w = pow(dx, l);
        j.wx = Interval(static_cast<double>(l)) * pow(dx, l - 1);
        j.wxx = Interval(static_cast<double>(l) * (l - 1)) * pow(dx, l - 2);
        return j;
    }
    const Interval dy = Y - Interval(0.5);
    const int m = l / 2;
    const Interval r2 = sqr(dx) + sqr(dy);
    const Interval a = Interval(2.0 * m) * pow(r2, m - 1);
    j.w = pow(r2, m);
    j.wx = a * dx;
    j.wy = a * dy;
    j.wxx = a;
    j.wyy = a;
    if (m >= 2) {
        const Interval b = Interval(4.0 * m * (m - 1)) * pow(r2, m - 2);
        j.wxx += b * sqr(dx);
        j.wyy += b * sqr(dy);
        j.wxy = b * dx * dy;
    }
    return j;
}

// u^e for integer e >= 0, with the e < 0 slots (multiplied by zero) mapped to 0
Interval upow(const Interval& u, int e) { return e < 0 ? Interval(0.0) : pow(u, e); }

} // namespace

SupResult wsup_bound(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                     const Interval& tau, const SupOptions& opt)
{
    spec.validate();
    TensorEvaluator ev(space, coeffs);
    const double p = spec.p;
    const bool smooth = spec.l == std::floor(spec.l) && static_cast<long>(spec.l) % 2 == 0 && p == std::floor(p) && p >= 2;
    const double half_l = spec.l / 2;
    const CellBound first = [&ev, &tau, &spec, p, half_l](const std::vector<double>& c, double h, const TensorEvaluator::Jet& jet) {
        // |x - x0|^2 at the centre and its maximum over the cell
        Interval r2c(0.0);
        double r2max = 0;
        for (int k = 0; k < spec.N; ++k) {
            const Interval dc = Interval(c[k]) - Interval(0.5);
            r2c += sqr(dc);
            const double far = rnd::add_up(dc.mag(), h);
            r2max = rnd::add_up(r2max, rnd::mul_up(far, far));
        }
        const Interval wc = spec.l == 0 ? Interval(1.0) : power(r2c, half_l);
        const Interval wmax = spec.l == 0 ? Interval(1.0) : power(Interval(r2max), half_l);
        const Interval ucell(0.0, taylor_range(ev, jet, h).mag());
        const Interval lower = tau + Interval(p) * wc * power(abs(jet.value), p - 1);
        const Interval upper = tau + Interval(p) * wmax * power(ucell, p - 1);
        return std::pair{lower.lo(), upper.hi()};
    };
    CellBound cell = first;
    if (smooth) {
        // second-order form of g = p w u^k, k = p - 1
        const int k = static_cast<int>(p) - 1;
        const int l = static_cast<int>(spec.l);
        const Interval P(p), K(static_cast<double>(k)), KK(static_cast<double>(k) * (k - 1));
        cell = [&ev, &tau, &first, P, K, KK, k, l, N = spec.N](const std::vector<double>& c, double h, const TensorEvaluator::Jet& jet) {
            using namespace rnd;
            const double yc = N == 2 ? c[1] : 0.5;
            const WeightJet wc = weight_jet(N, l, Interval(c[0]), Interval(yc));
            const Interval g = P * wc.w * upow(jet.value, k);
            const Interval gx = P * (wc.wx * upow(jet.value, k) + K * wc.w * upow(jet.value, k - 1) * jet.dx);
            const Interval gy = P * (wc.wy * upow(jet.value, k) + K * wc.w * upow(jet.value, k - 1) * jet.dy);
            // ranges over the cell
            const Interval box(-h, h);
            const Interval X = Interval(c[0]) + box;
            const Interval Y = N == 2 ? Interval(yc) + box : Interval(yc);
            const WeightJet w = weight_jet(N, l, X, Y);
            const double h2 = mul_up(h, h);
            const Interval e1 = Interval(-1.0, 1.0) * Interval(mul_up(0.5, mul_up(ev.third(), h2)));
            const Interval e2 = Interval(-1.0, 1.0) * Interval(mul_up(ev.third(), h));
            const Interval u = taylor_range(ev, jet, h);
            const Interval ux = jet.dx + jet.dxx * box + jet.dxy * box + e1;
            const Interval uy = N == 2 ? jet.dy + jet.dxy * box + jet.dyy * box + e1 : Interval(0.0);
            const Interval uxx = jet.dxx + e2;
            const Interval uxy = N == 2 ? jet.dxy + e2 : Interval(0.0);
            const Interval uyy = N == 2 ? jet.dyy + e2 : Interval(0.0);
            const Interval uk = upow(u, k), uk1 = upow(u, k - 1), uk2 = upow(u, k - 2);
            const Interval gxx = P * (w.wxx * uk + Interval(2.0) * K * w.wx * uk1 * ux + K * w.w * uk1 * uxx + KK * w.w * uk2 * sqr(ux));
            double curv = gxx.mag();
            double lin = mul_up(gx.mag(), h);
            if (N == 2) {
                const Interval gyy = P * (w.wyy * uk + Interval(2.0) * K * w.wy * uk1 * uy + K * w.w * uk1 * uyy + KK * w.w * uk2 * sqr(uy));
                const Interval gxy = P * (w.wxy * uk + K * uk1 * (w.wx * uy + w.wy * ux) + K * w.w * uk1 * uxy + KK * w.w * uk2 * ux * uy);
                curv = add_up(add_up(curv, gyy.mag()), mul_up(2.0, gxy.mag()));
                lin = add_up(lin, mul_up(gy.mag(), h));
            }
            const double up = add_up(add_up((tau + g).hi(), lin), mul_up(0.5, mul_up(curv, h2)));
            const auto [lo1, up1] = first(c, h, jet);
            return std::pair{std::max(lo1, (tau + g).lo()), std::min(up1, up)};
        };
    }
    return branch_and_bound(ev, cell, opt);
}

ConstantsBundle compute_constants(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                                  int M, const Interval& tau)
{
    ConstantsBundle b;
    b.tau = tau;
    b.C2 = embed_C2(spec.N, tau);
    b.Cp1 = embed_Cp(spec.N, spec.p + 1, tau);
    b.CM = proj_CM(M);
    b.CMtau = proj_CMtau(M, tau);
    b.d = weight_d(spec);
    const auto w = wsup_bound(spec, space, coeffs, tau);
    b.Wsup = w.value;
    b.wsup_warning = w.warning;
    return b;
}

} // namespace henon
