#include <doctest.h>

#include "henon/nk_verifier.hpp"

#include <cmath>
#include <random>

using namespace henon;

TEST_CASE("nk: zero approximation")
{
    const ProblemSpec spec{2, 2.0, 3.0};
    const SymmetrySpace sp{SpaceTag::V4, 2, 6};
    const std::vector<double> z(space_dimension(sp), 0.0);
    CHECK(residual_norm(spec, sp, z, Interval(1.0)) == Interval(0.0));
    const auto n = rigorous_norms(spec, sp, z, choose_tau());
    CHECK(n.h10 == Interval(0.0));
    CHECK(n.lp1 == Interval(0.0));
    CHECK(n.peak == Interval(0.0));
    CHECK(lipschitz_L(3, Interval(1.0), Interval(1.0), Interval(0.0), Interval(0.0)) == Interval(0.0));

    GalerkinSolution u = zero_solution(spec, sp);
    VerifyOptions opt;
    opt.M_eig = 6;
    const auto rep = verify_solution(u, opt);
    CHECK(rep.nk.proven);
    CHECK(rep.nk.rho.hi() == 0.0);
}

TEST_CASE("nk: residual and norms of phi_1")
{
    const ProblemSpec spec{1, 0.0, 3.0};
    const SymmetrySpace sp{SpaceTag::Full, 1, 1};
    const std::vector<double> c{1.0};
    // phi_1 = x - x^2, Lap phi_1 = -2
    PolySeries<Rational> r(1, 6);
    r.at(0) = -2;
    r.at(3) = 1;
    r.at(4) = -3;
    r.at(5) = 3;
    r.at(6) = -1;
    const Rational sq = integrate_exact(r * r);
    const Interval C2 = embed_C2(1, Interval(0.0));
    const Interval expect = C2 * sqrt(enclose(sq));
    const Interval got = residual_norm(spec, sp, c, C2);
    CHECK(got.lo() <= expect.hi());
    CHECK(expect.lo() <= got.hi());
    CHECK(got.width() <= 1e-14);

    const auto n = rigorous_norms(spec, sp, c, Interval(0.0));
    CHECK(n.h10.contains(1.0 / std::sqrt(3.0)));
    CHECK(n.h10.width() <= 1e-15);
    // int (x - x^2)^4 = 1/630
    CHECK(n.lp1.lo() <= std::pow(1.0 / 630, 0.25) * (1 + 1e-14));
    CHECK(n.lp1.hi() >= std::pow(1.0 / 630, 0.25) * (1 - 1e-14));
    CHECK(n.peak.hi() >= 0.25);
    CHECK(n.peak.hi() <= 0.25 + 1e-6);
}

TEST_CASE("nk: certificate limits")
{
    const auto one = [](const Interval&) { return Interval(1.0); };
    auto c = certify(Interval(0.0), Interval(2.0), one, Interval(1.0), Interval(0.0));
    CHECK(c.proven);
    CHECK(c.rho.hi() == 0.0);
    CHECK(c.rR.hi() == 0.0);

    c = certify(Interval(0.5), Interval(1.0), one, Interval(4.0), Interval(0.0));
    CHECK(c.proven);
    CHECK(c.alpha.hi() == 0.5);
    CHECK(c.beta.hi() == 1.0);
    CHECK(c.rho.hi() == doctest::Approx(1.0));
    CHECK(c.rho.hi() >= 1.0);
    CHECK(c.rR.hi() >= 0.25);

    c = certify(Interval(0.6), Interval(1.0), one, Interval(4.0), Interval(0.0));
    CHECK_FALSE(c.proven);
    CHECK(c.reason == "alpha-beta");

    // L sees r = 2 alpha + delta
    Interval seen;
    certify(Interval(1e-3), Interval(1.0), [&](const Interval& r) { seen = r; return Interval(1.0); }, Interval(1.0), Interval(0.0));
    CHECK(seen.lo() >= 2e-3);
    CHECK(seen.lo() <= 2e-3 * (1 + 2e-6));
    CHECK(delta_policy(0.0) == 1e-15);
}

TEST_CASE("nk: monotone in its inputs and rho below two alpha")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-12, 0);
    std::uniform_real_distribution<double> V(0.1, 10);
    int proven = 0;
    for (int t = 0; t < 2000; ++t) {
        const double res = std::pow(10.0, U(rng)), K = V(rng), L0 = V(rng), h = V(rng);
        const auto Lf = [&](double s) { return [=](const Interval& r) { return Interval(s * L0 * (1 + r.hi())); }; };
        const auto a = certify(Interval(res), Interval(K), Lf(1.0), Interval(h), Interval(0.0));
        if (!a.proven)
            continue;
        ++proven;
        CHECK(a.rho.hi() <= a.unique_radius.hi());
        CHECK(rnd::mul_up(a.alpha.hi(), a.beta.hi()) <= 0.5);
        const double f = 1 + 1e-6;
        for (int k = 0; k < 3; ++k) {
            const auto b = certify(Interval(k == 0 ? res * f : res), Interval(k == 1 ? K * f : K), Lf(k == 2 ? f : 1.0),
                                   Interval(h), Interval(0.0));
            if (b.proven)
                CHECK(b.rho.hi() >= a.rho.hi());
        }
    }
    CHECK(proven > 500);
}

TEST_CASE("nk: residual falls with the truncation order")
{
    const ProblemSpec spec{1, 0.0, 3.0};
    const Interval C2 = embed_C2(1, choose_tau());
    double last = INFINITY;
    for (int M : {20, 30, 40}) {
        const auto u = solve_from_peaks(spec, {SpaceTag::V1, 1, M}, seed_preset("center", 1));
        REQUIRE(u.converged);
        const double r = residual_norm(spec, u.space, u.coeffs, C2).hi();
        CHECK(r < last);
        last = r;
    }
    CHECK(last <= 1e-11);
}

TEST_CASE("nk: one-peak solution on the segment is proven")
{
    const ProblemSpec spec{1, 0.0, 3.0};
    const auto u = solve_from_peaks(spec, {SpaceTag::V1, 1, 40}, seed_preset("center", 1));
    VerifyOptions opt;
    opt.M_eig = 40;
    opt.eig_space = SpaceTag::Full;
    const auto rep = verify_solution(u, opt);
    REQUIRE(rep.nk.proven);
    CHECK(rep.nk.rA.hi() <= 1e-10);
    CHECK(rep.nk.rho.hi() <= rep.nk.unique_radius.hi());
    CHECK(rep.nk.L.hi() <= 1.29);
    CHECK(rep.nk.peak.hi() == doctest::Approx(3.70815).epsilon(1e-5));
    CHECK(rep.norms.h10.lo() > 7.9);

    opt.tau = -1.0;
    CHECK_THROWS_WITH(verify_solution(u, opt), doctest::Contains("invalid-tau"));
}

TEST_CASE("nk: non-polynomial problems are refused")
{
    const ProblemSpec spec{1, 1.0, 3.0};
    const SymmetrySpace sp{SpaceTag::Full, 1, 3};
    const std::vector<double> c(3, 0.1);
    CHECK_THROWS_WITH(residual_norm(spec, sp, c, Interval(1.0)), doctest::Contains("unsupported"));
}
