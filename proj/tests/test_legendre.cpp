#include <doctest.h>

#include "henon/exact_poly.hpp"
#include "henon/legendre.hpp"

#include <cmath>
#include <random>

using namespace henon;

TEST_CASE("legendre: phi_1 and boundary zeros")
{
    const auto f1 = build_phi(1);
    CHECK(f1.phi.degree_x() == 2);
    CHECK(f1.phi.coeff(0) == 0);
    CHECK(f1.phi.coeff(1) == 1);
    CHECK(f1.phi.coeff(2) == -1);
    CHECK(f1.phi.evaluate(Rational(1, 2)) == Rational(1, 4));
    for (int n = 1; n <= 20; ++n) {
        const auto f = build_phi(n);
        CHECK(f.phi.evaluate(Rational(0)) == 0);
        CHECK(f.phi.evaluate(Rational(1)) == 0);
        CHECK(f.phi.coeff(n + 1) != 0);
        // odd n symmetric about 1/2, even n antisymmetric
        for (int k = 1; k < 5; ++k) {
            const Rational x(k, 11);
            const Rational a = f.phi.evaluate(x);
            const Rational b = f.phi.evaluate(Rational(Rational(1) - x));
            CHECK(a == (n % 2 == 1 ? b : Rational(-b)));
        }
    }
}

TEST_CASE("legendre: index sets")
{
    auto v1 = index_set({SpaceTag::V1, 1, 5});
    REQUIRE(v1.size() == 3);
    CHECK(v1[0].i == 1);
    CHECK(v1[1].i == 3);
    CHECK(v1[2].i == 5);
    auto v4 = index_set({SpaceTag::V4, 2, 4});
    REQUIRE(v4.size() == 3);
    CHECK(v4[0] == BasisIndex{1, 1, true});
    CHECK(v4[1] == BasisIndex{1, 3, true});
    CHECK(v4[2] == BasisIndex{3, 3, true});
    CHECK(index_set({SpaceTag::Full, 2, 3}).size() == 9);
    CHECK_THROWS_AS(index_set({SpaceTag::V2, 1, 4}), Error);
    for (int M = 2; M <= 9; ++M) {
        const int odd = (M + 1) / 2, even = M / 2;
        CHECK(space_dimension({SpaceTag::Full, 1, M}) == static_cast<std::size_t>(M));
        CHECK(space_dimension({SpaceTag::V1, 1, M}) == static_cast<std::size_t>(odd));
        CHECK(space_dimension({SpaceTag::V1, 2, M}) == static_cast<std::size_t>(odd * M));
        CHECK(space_dimension({SpaceTag::V2, 2, M}) == static_cast<std::size_t>(M * (M + 1) / 2));
        CHECK(space_dimension({SpaceTag::V3, 2, M}) == static_cast<std::size_t>(odd * (odd + 1) / 2 + even * (even + 1) / 2));
        CHECK(space_dimension({SpaceTag::V4, 2, M}) == static_cast<std::size_t>(odd * (odd + 1) / 2));
    }
}

TEST_CASE("legendre: assemble_function")
{
    const std::vector<double> one{1.0};
    const auto p = assemble_function({SpaceTag::Full, 1, 1}, one);
    CHECK(p.coeff(1) == 1);
    CHECK(p.coeff(2) == -1);
    const std::vector<double> zeros(9, 0.0);
    CHECK(assemble_function({SpaceTag::Full, 2, 3}, zeros).is_zero());
    const SymmetrySpace v2{SpaceTag::V2, 2, 3};
    const auto idx = index_set(v2);
    std::vector<double> e(idx.size(), 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k)
        if (idx[k].i == 1 && idx[k].j == 2)
            e[k] = 1.0;
    const auto q = assemble_function(v2, e);
    CHECK(q.swapped().data() == q.data());
    CHECK(!q.is_zero());
    CHECK_THROWS_AS(assemble_function(v2, std::vector<double>(2, 1.0)), Error);
}

TEST_CASE("legendre: assemble_function is linear")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1, 1);
    const SymmetrySpace sp{SpaceTag::V3, 2, 5};
    const std::size_t n = space_dimension(sp);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> a(n), b(n), s(n);
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = std::ldexp(std::round(U(rng) * 1024), -10);
            b[k] = std::ldexp(std::round(U(rng) * 1024), -10);
            s[k] = a[k] + b[k]; // exact for these dyadics
        }
        const auto pa = assemble_function(sp, a);
        const auto pb = assemble_function(sp, b);
        CHECK((pa + pb).data() == assemble_function(sp, s).data());
    }
}

TEST_CASE("legendre: exact integration")
{
    const auto d1 = build_phi(1).phi.derivative(0);
    CHECK(integrate_exact(d1 * d1) == Rational(1, 3));
    CHECK(integrate_poly(d1 * d1).contains(1.0 / 3.0));
    CHECK(integrate_poly(PolySeries<Rational>(1, 3)) == Interval(0.0));
    PolySeries<Rational> xy(2, 1, 1);
    xy.at(1, 1) = 1;
    CHECK(integrate_exact(xy) == Rational(1, 4));
    PolySeries<double> xyd(2, 1, 1);
    xyd.at(1, 1) = 1.0;
    CHECK(integrate_poly(xyd) == 0.25);
    // stiffness is diagonal: (phi_i', phi_j') = delta_ij / (2i+1)
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j) {
            const auto a = build_phi(i).phi.derivative(0);
            const auto b = build_phi(j).phi.derivative(0);
            CHECK(integrate_exact(a * b) == (i == j ? Rational(1, 2 * i + 1) : Rational(0)));
        }
    // parity
    PolySeries<Rational> t(1, 1);
    t.at(0) = -1;
    t.at(1) = 2;
    for (int n = 1; n <= 15; n += 2)
        CHECK(integrate_exact(build_phi(n).phi * t) == 0);
}

TEST_CASE("legendre: weight polynomial")
{
    CHECK(weight_poly({1, 0.0, 3.0}).data() == std::vector<Rational>{Rational(1)});
    const auto w2 = weight_poly({1, 2.0, 3.0});
    CHECK(w2.coeff(0) == Rational(1, 4));
    CHECK(w2.coeff(1) == -1);
    CHECK(w2.coeff(2) == 1);
    const auto w4 = weight_poly({2, 4.0, 3.0});
    CHECK(w4.evaluate(Rational(0), Rational(0)) == Rational(1, 4));
    CHECK(w4.degree_x() == 4);
    CHECK_THROWS_AS(weight_poly({1, 1.0, 3.0}), Error);
    CHECK_THROWS_AS(weight_poly({1, 2.5, 3.0}), Error);
    // nonnegative on a 16 x 16 subdivision of the square
    const auto W = weight_poly({2, 6.0, 3.0});
    PolySeries<Interval> Wi(2, W.degree_x(), W.degree_y());
    for (int a = 0; a <= W.degree_x(); ++a)
        for (int b = 0; b <= W.degree_y(); ++b)
            Wi.at(a, b) = enclose(W.at(a, b));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const Interval x(i / 16.0, (i + 1) / 16.0), y(j / 16.0, (j + 1) / 16.0);
            const Interval v = Wi.evaluate(x, y);
            CHECK(v.hi() >= 0.0);
            CHECK(weight_value({2, 6.0, 3.0}, x.mid(), y.mid()) >= 0.0);
        }
    CHECK(weight_value({2, 3.0, 3.0}, 0.0, 0.0) == doctest::Approx(std::pow(0.5, 1.5)));
}

TEST_CASE("legendre: floating evaluation and quadrature")
{
    std::vector<double> phi(12), dphi(12);
    for (double x : {0.1, 0.37, 0.5, 0.93}) {
        phi_values(x, 12, phi, dphi);
        for (int n = 1; n <= 12; ++n) {
            const auto f = build_phi(n);
            const double exact = f.phi.evaluate(to_rational(x)).get_d();
            const double dexact = f.phi.derivative(0).evaluate(to_rational(x)).get_d();
            CHECK(phi[n - 1] == doctest::Approx(exact).epsilon(1e-12).scale(1e-3));
            CHECK(dphi[n - 1] == doctest::Approx(dexact).epsilon(1e-12));
            CHECK(std::fabs(phi[n - 1]) <= 1.0 / (2 * n + 1) + 1e-15);
        }
    }
    const auto rule = gauss_legendre(9);
    for (int k = 0; k <= 17; ++k) {
        double s = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            s += rule.weights[i] * std::pow(rule.nodes[i], k);
        CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
    CHECK(gauss_legendre(1).nodes[0] == 0.5);
}

TEST_CASE("exact_poly: agrees with the rational construction")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1, 1);
    for (const SymmetrySpace sp : {SymmetrySpace{SpaceTag::Full, 1, 7}, SymmetrySpace{SpaceTag::V1, 2, 5},
                                   SymmetrySpace{SpaceTag::V2, 2, 4}}) {
        std::vector<double> c(space_dimension(sp));
        for (auto& v : c)
            v = U(rng) * std::pow(10.0, -static_cast<int>(rng() % 12));
        const auto q = assemble_function(sp, c);
        const auto e = ExactPoly::from_solution(sp, c);
        CHECK(e.to_rational().data() == q.data());
        const auto e2 = e * e;
        CHECK(inner(e, e) == integrate_exact(q * q));
        CHECK(e2.integrate() == integrate_exact(q * q));
        CHECK((e2 + e).integrate() == integrate_exact(q * q + q));
        CHECK((e2 - e2).integrate() == 0);
        const Rational x(3, 8), y(5, 16);
        CHECK(e.evaluate(x, y) == q.evaluate(x, y));
        CHECK(e.laplacian().to_rational().data().size() > 0);
    }
}

TEST_CASE("exact_poly: moments")
{
    const auto basis = integer_basis(6);
    const std::vector<std::pair<int, int>> pairs{{1, 1}, {2, 5}, {6, 6}};
    const auto mt = basis_moments(basis, pairs, 4);
    for (std::size_t k = 0; k < pairs.size(); ++k)
        for (int s = 0; s <= 4; ++s) {
            PolySeries<Rational> xs(1, s);
            xs.at(s) = 1;
            const Rational expect = integrate_exact(xs * build_phi(pairs[k].first).phi * build_phi(pairs[k].second).phi);
            CHECK(Rational(mt.m[k][s]) * mt.den_inv == expect);
        }
}
