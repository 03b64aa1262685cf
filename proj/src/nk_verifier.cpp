#include "henon/nk_verifier.hpp"

#include "henon/exact_poly.hpp"
#include "henon/sup_bound.hpp"

#include <algorithm>
#include <cmath>

namespace henon {

namespace {

void check_inputs(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs)
{
    spec.validate();
    if (!spec.verified_eligible())
        throw Error("unsupported-in-verified-mode", "verification needs even integer l and odd integer p");
    space.validate();
    if (space.N != spec.N)
        throw Error("shape-mismatch", "space dimension differs from the problem");
    if (coeffs.size() != space_dimension(space))
        throw Error("shape-mismatch", "coefficient vector has the wrong length");
}

ExactPoly power(const ExactPoly& u, int k)
{
    ExactPoly r = u;
    for (int i = 1; i < k; ++i)
        r = r * u;
    return r;
}

bool all_zero(std::span<const double> c)
{
    return std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
}

} // namespace

SolutionNorms rigorous_norms(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                             const Interval& tau)
{
    check_inputs(spec, space, coeffs);
    SolutionNorms n;
    if (all_zero(coeffs)) {
        n.h10 = n.lp1 = n.peak = Interval(0.0);
        return n;
    }
    const ExactPoly u = ExactPoly::from_solution(space, coeffs);
    Rational grad = 0;
    for (int v = 0; v < spec.N; ++v) {
        const ExactPoly du = u.derivative(v);
        grad += inner(du, du);
    }
    const Interval sq = enclose(grad) + tau * enclose(inner(u, u));
    n.h10 = sqrt(sq);

    const int p = spec.p_int();
    const ExactPoly half = power(u, (p + 1) / 2);
    const Interval ip = enclose(inner(half, half));
    n.lp1 = ip.hi() == 0 ? Interval(0.0) : powf(ip, Interval(1.0) / Interval(static_cast<double>(p + 1)));

    const auto pk = peak_bound(space, coeffs);
    n.peak = pk.value;
    n.peak_warning = pk.warning;
    return n;
}

Interval residual_norm(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                       const Interval& C2)
{
    check_inputs(spec, space, coeffs);
    if (all_zero(coeffs))
        return Interval(0.0);
    const ExactPoly u = ExactPoly::from_solution(space, coeffs);
    const ExactPoly w = ExactPoly::from_rational(weight_poly(spec));
    const ExactPoly r = u.laplacian() + w * power(u, spec.p_int());
    const Interval sq = enclose(inner(r, r));
    return C2 * sqrt(sq);
}

Interval lipschitz_L(double p, const Interval& Cp1, const Interval& d, const Interval& lp1_norm, const Interval& r)
{
    if (r.lo() < 0)
        throw Error("bad-radius", "radius must be nonnegative");
    const Interval P(p);
    const Interval base = lp1_norm + Cp1 * r;
    Interval g = p == 3.0 ? base : (base.hi() == 0 ? Interval(0.0) : powf(base, P - 2.0));
    return P * (P - 1.0) * d * pow(Cp1, 3) * g;
}

double delta_policy(double alpha) { return std::max(1e-15, rnd::mul_up(1e-6, alpha)); }

NKCertificate certify(const Interval& residual, const Interval& K, const std::function<Interval(const Interval&)>& L_of_r,
                      const Interval& h10, const Interval& peak)
{
    NKCertificate c;
    c.residual = residual;
    c.K = K;
    c.peak = peak;
    c.alpha = Interval(rnd::mul_up(K.hi(), residual.hi()));
    c.delta = delta_policy(c.alpha.hi());
    const Interval r(rnd::add_up(rnd::mul_up(2.0, c.alpha.hi()), c.delta));
    c.L = Interval(L_of_r(r).hi());
    c.beta = Interval(rnd::mul_up(K.hi(), c.L.hi()));
    const double ab = rnd::mul_up(c.alpha.hi(), c.beta.hi());
    c.unique_radius = Interval(rnd::mul_up(2.0, c.alpha.hi()));
    if (!(ab <= 0.5)) {
        c.reason = "alpha-beta";
        return c;
    }
    c.proven = true;
    // rho = 2 alpha / (1 + sqrt(1 - 2 alpha beta)), upper bound
    const double s = rnd::sqrt_down(std::max(0.0, rnd::sub_down(1.0, rnd::mul_up(2.0, ab))));
    const double rho = rnd::div_up(c.unique_radius.hi(), rnd::add_down(1.0, s));
    c.rho = Interval(std::min(rho, c.unique_radius.hi()));
    c.rA = Interval(c.rho.hi());
    if (c.rho.hi() == 0)
        c.rR = Interval(0.0);
    else if (h10.lo() > 0)
        c.rR = Interval(rnd::div_up(c.rho.hi(), h10.lo()));
    else
        c.rR = Interval::unbounded_above(0.0);
    return c;
}

VerificationReport verify_solution(const GalerkinSolution& u, const VerifyOptions& opt)
{
    const ProblemSpec& spec = u.spec;
    check_inputs(spec, u.space, u.coeffs);
    if (opt.M_eig < 1)
        throw Error("bad-flag", "M_eig must be positive");
    VerificationReport rep;
    rep.eig_space = opt.eig_space.value_or(u.space.tag);
    rep.M_eig = opt.M_eig;
    const Interval tau = choose_tau(opt.tau);
    const SymmetrySpace es{rep.eig_space, spec.N, opt.M_eig};
    es.validate();

    rep.constants = compute_constants(spec, u.space, u.coeffs, opt.M_eig, tau);
    rep.norms = rigorous_norms(spec, u.space, u.coeffs, tau);
    const Interval res = residual_norm(spec, u.space, u.coeffs, rep.constants.C2);

    Interval K;
    try {
        const Pencil pencil = assemble_pencil(spec, u.space, u.coeffs, es, tau, opt.jobs);
        rep.discrete = enclose_generalized_eigs(pencil);
        rep.corrected = apply_lower_bound_correction(*rep.discrete, rep.constants.CMtau, rep.constants.Wsup);
        rep.inverse = inverse_norm(*rep.corrected);
        K = rep.inverse->K;
    } catch (const Error& e) {
        rep.nk.residual = res;
        rep.nk.peak = rep.norms.peak;
        rep.nk.reason = e.code();
        return rep;
    }
    const auto& cb = rep.constants;
    const Interval lp1 = rep.norms.lp1;
    rep.nk = certify(res, K, [&](const Interval& r) { return lipschitz_L(spec.p, cb.Cp1, cb.d, lp1, r); }, rep.norms.h10,
                     rep.norms.peak);
    return rep;
}

} // namespace henon
