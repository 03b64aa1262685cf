#include <doctest.h>

#include "henon/constants.hpp"
#include "henon/eigen_enclosure.hpp"
#include "henon/galerkin.hpp"

#include <cmath>
#include <random>

using namespace henon;

namespace {

IntervalMatrix point_matrix(const Eigen::MatrixXd& m)
{
    IntervalMatrix r(m.rows());
    r.mid = m;
    return r;
}

} // namespace

TEST_CASE("eigen: diagonal pencil")
{
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = 1;
    A(1, 1) = 2;
    const auto E = enclose_generalized_eigs(point_matrix(A), point_matrix(Eigen::MatrixXd::Identity(2, 2)));
    REQUIRE(E.lambda.size() == 2);
    CHECK(E.lambda[0].contains(1.0));
    CHECK(E.lambda[1].contains(2.0));
    CHECK(E.lambda[0].width() <= 1e-12);
    CHECK(E.lambda[1].width() <= 1e-12);
}

TEST_CASE("eigen: A equal to B gives ones")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int n : {1, 4, 9}) {
        Eigen::MatrixXd R(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                R(i, j) = U(rng);
        const Eigen::MatrixXd S = R * R.transpose() + n * Eigen::MatrixXd::Identity(n, n);
        const auto E = enclose_generalized_eigs(point_matrix(S), point_matrix(S));
        for (const auto& x : E.lambda)
            CHECK(x.contains(1.0));
    }
}

TEST_CASE("eigen: indefinite B is rejected unless flagged")
{
    Eigen::MatrixXd B = Eigen::MatrixXd::Identity(2, 2);
    B(1, 1) = -1;
    const auto A = point_matrix(Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_WITH(enclose_generalized_eigs(A, point_matrix(B)), doctest::Contains("pencil-not-definite"));
    Eigen::MatrixXd An = Eigen::MatrixXd::Identity(2, 2);
    An(0, 0) = -1;
    CHECK_THROWS_WITH(enclose_generalized_eigs(point_matrix(An), A), doctest::Contains("pencil-not-definite"));
}

TEST_CASE("eigen: radii widen the enclosure")
{
    IntervalMatrix A(1), B(1);
    A.mid(0, 0) = 2;
    A.rad(0, 0) = 0.1;
    B.mid(0, 0) = 1;
    const auto E = enclose_generalized_eigs(A, B);
    CHECK(E.lambda[0].lo() <= 1.9);
    CHECK(E.lambda[0].hi() >= 2.1);
    CHECK(E.lambda[0].hi() <= 2.1 + 1e-9);
}

TEST_CASE("eigen: overlapping intervals become one cluster")
{
    IntervalMatrix A(2), B(2);
    A.mid = Eigen::Vector2d(1.0, 1.0 + 1e-14).asDiagonal();
    A.rad.setConstant(1e-10);
    B.mid.setIdentity();
    const auto E = enclose_generalized_eigs(A, B);
    CHECK(E.lambda[0] == E.lambda[1]);
}

TEST_CASE("eigen: lower bound correction")
{
    EigEnclosure e;
    e.lambda = {Interval(1.0)};
    e.tail_lower = Interval(1.0);
    const auto c = apply_lower_bound_correction(e, Interval(1.0), Interval(1.0));
    CHECK(c.lambda[0].lo() <= 0.5);
    CHECK(c.lambda[0].lo() >= 0.5 - 1e-15);
    CHECK(c.lambda[0].hi() == 1.0);

    const auto z = apply_lower_bound_correction(e, Interval(0.0), Interval(100.0));
    CHECK(z.lambda[0].lo() == 1.0);

    e.lambda = {Interval(0.5, 0.6), Interval(3.0, 3.5), Interval(40.0, 41.0)};
    const auto w = apply_lower_bound_correction(e, Interval(0.1), Interval(50.0));
    for (std::size_t k = 0; k < w.lambda.size(); ++k) {
        CHECK(w.lambda[k].lo() <= w.lambda[k].hi());
        CHECK(w.lambda[k].lo() <= e.lambda[k].lo());
        CHECK(w.lambda[k].hi() >= e.lambda[k].hi());
    }
    CHECK(w.tail_lower.lo() == w.lambda.back().lo());
    // the last two overlap after correction and are reported as one cluster
    CHECK(w.lambda[1] == w.lambda[2]);
}

TEST_CASE("eigen: inverse norm enumeration")
{
    EigEnclosure e;
    e.lambda = {Interval(2.0)};
    e.tail_lower = Interval(10.0);
    auto c = inverse_norm(e);
    CHECK(c.mu0.lo() == doctest::Approx(0.5));
    CHECK(c.K.hi() == doctest::Approx(2.0));
    CHECK(c.K.hi() >= 2.0);

    e.lambda = {enclose(Rational(1, 3)), Interval(3.0)};
    c = inverse_norm(e);
    CHECK(c.mu0.lo() <= 2.0 / 3);
    CHECK(c.mu0.lo() == doctest::Approx(2.0 / 3));
    CHECK(c.K.hi() >= 1.5);
    CHECK(c.K.hi() == doctest::Approx(1.5));
    CHECK(c.contributing_index == 2);

    e.lambda = {Interval(100.0)};
    c = inverse_norm(e);
    CHECK(c.contributing_index == -1);
    CHECK(c.mu0.lo() <= 0.9);

    e.lambda = {Interval(0.5, 1.5)};
    CHECK_THROWS_WITH(inverse_norm(e), doctest::Contains("mu0-possibly-zero"));
    e.lambda = {Interval(2.0)};
    e.tail_lower = Interval(0.9);
    CHECK_THROWS_WITH(inverse_norm(e), doctest::Contains("tail-unresolved"));
}

TEST_CASE("eigen: mu0 never exceeds one")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.01, 50);
    for (int t = 0; t < 200; ++t) {
        EigEnclosure e;
        for (int k = 0; k < 4; ++k) {
            const double a = U(rng);
            if (a > 0.99 && a < 1.01)
                continue;
            e.lambda.push_back(Interval(a));
        }
        e.tail_lower = Interval(60.0);
        const auto c = inverse_norm(e);
        CHECK(c.mu0.lo() <= 1.0);
        CHECK(c.mu0.lo() > 0.0);
        CHECK(c.K.hi() * c.mu0.lo() >= 1.0);
    }
}

TEST_CASE("eigen: pencil matrices for N=1, M=2")
{
    // phi_1 = x(1-x), phi_2 = x(1-x)(2x-1) up to normalisation; u = phi_1
    const ProblemSpec spec{1, 0.0, 3.0};
    const SymmetrySpace sp{SpaceTag::Full, 1, 2};
    const std::vector<double> u{1.0, 0.0};
    const Interval tau(0.5);
    const auto P = assemble_pencil(spec, sp, u, sp, tau);
    const auto b1 = build_phi(1).phi, b2 = build_phi(2).phi;
    const auto oracle_a = [&](const PolySeries<Rational>& f, const PolySeries<Rational>& g) -> Rational {
        return integrate_exact(f.derivative(0) * g.derivative(0)) + Rational(1, 2) * integrate_exact(f * g);
    };
    const auto uu = assemble_function(sp, u);
    const auto oracle_b = [&](const PolySeries<Rational>& f, const PolySeries<Rational>& g) -> Rational {
        return integrate_exact((uu * uu * Rational(3) + PolySeries<Rational>::constant(1, Rational(1, 2))) * f * g);
    };
    const PolySeries<Rational>* bs[2] = {&b1, &b2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Interval ea = enclose(oracle_a(*bs[i], *bs[j]));
            const Interval eb = enclose(oracle_b(*bs[i], *bs[j]));
            CHECK(P.A.at(i, j).contains(ea.lo()));
            CHECK(P.A.at(i, j).contains(ea.hi()));
            CHECK(P.B.at(i, j).contains(eb.lo()));
            CHECK(P.B.at(i, j).contains(eb.hi()));
            CHECK(P.A.at(i, j).width() <= 1e-15);
            CHECK(P.B.at(i, j).width() <= 1e-15);
        }
    CHECK(P.A.mid == P.A.mid.transpose());
    CHECK(P.B.mid == P.B.mid.transpose());
    CHECK(P.A.rad == P.A.rad.transpose());
}

TEST_CASE("eigen: zero potential pushes mu towards one")
{
    const ProblemSpec spec{2, 0.0, 3.0};
    const SymmetrySpace sp{SpaceTag::V4, 2, 6};
    const std::vector<double> u(space_dimension(sp), 0.0);
    const auto P = assemble_pencil(spec, sp, u, sp, Interval(1e-8));
    const auto E = enclose_generalized_eigs(P);
    for (const auto& x : E.lambda) {
        CHECK(x.lo() > 1e8);
        CHECK(mu_lower(x) > 0.99);
    }
}

TEST_CASE("eigen: one-peak solution on the segment")
{
    const ProblemSpec spec{1, 0.0, 3.0};
    const auto u = solve_from_peaks(spec, {SpaceTag::V1, 1, 40}, seed_preset("center", 1));
    REQUIRE(u.converged);
    const Interval tau = choose_tau();
    const SymmetrySpace es{SpaceTag::Full, 1, 40};
    const auto P = assemble_pencil(spec, u.space, u.coeffs, es, tau, 2);
    const auto E = enclose_generalized_eigs(P);
    const auto k = compute_constants(spec, u.space, u.coeffs, 40, tau);
    const auto C = apply_lower_bound_correction(E, k.CMtau, k.Wsup);
    const auto cert = inverse_norm(C);
    CHECK(cert.K.hi() >= 2.0);
    CHECK(cert.K.hi() <= 2.1);

    // Galerkin eigenvalues at higher truncation sit inside the corrected enclosure
    const auto mu = approx_eigs(u, 4, 60, tau.hi());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double lam = 1.0 / (1.0 - mu[i]);
        CHECK(C.lambda[i].lo() <= lam);
        CHECK(lam <= C.lambda[i].hi() + 1e-9 * lam);
    }
    CHECK(cert.K.hi() + 1e-6 >= 1.0 / std::fabs(mu[1]));
}

TEST_CASE("eigen: restricted space intervals appear in the full space")
{
    const ProblemSpec spec{2, 0.0, 3.0};
    const auto u = solve_from_peaks(spec, {SpaceTag::V4, 2, 12}, seed_preset("center", 2));
    REQUIRE(u.converged);
    const Interval tau(1e-3);
    const auto Ev = enclose_generalized_eigs(assemble_pencil(spec, u.space, u.coeffs, {SpaceTag::V4, 2, 12}, tau));
    const auto Ef = enclose_generalized_eigs(assemble_pencil(spec, u.space, u.coeffs, {SpaceTag::Full, 2, 12}, tau));
    for (const auto& x : Ev.lambda) {
        bool found = false;
        for (const auto& y : Ef.lambda)
            found = found || (x.lo() <= y.hi() * (1 + 1e-9) && y.lo() <= x.hi() * (1 + 1e-9));
        CHECK(found);
    }
}
