#include <doctest.h>

#include "henon/interval.hpp"
#include "henon/rational.hpp"

#include <cmath>
#include <random>

using namespace henon;

namespace {

bool holds(const Interval& r, const Rational& exact)
{
    return to_rational(r.lo()) <= exact && exact <= to_rational(r.hi());
}

double random_double(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> ex(-40, 40);
    return std::ldexp(mant(rng), ex(rng));
}

} // namespace

TEST_CASE("interval: basic endpoint arithmetic")
{
    CHECK(Interval(1, 2) + Interval(3, 4) == Interval(4, 6));
    CHECK(Interval(-1, 2) * Interval(3, 3) == Interval(-3, 6));
    const Interval third = Interval(1.0) / Interval(3.0);
    CHECK(holds(third, Rational(1, 3)));
    CHECK(third.hi() == rnd::next_up(third.lo()));
    CHECK_THROWS_AS(Interval(1.0) / Interval(-1, 1), Error);
    CHECK_THROWS_AS(Interval(2, 1), Error);
}

TEST_CASE("interval: sqrt pow powf")
{
    CHECK(sqrt(Interval(4.0)) == Interval(2.0));
    CHECK(pow(Interval(-2, 1), 2) == Interval(0, 4));
    CHECK(pow(Interval(-2, 1), 3) == Interval(-8, 1));
    const Interval pi2 = sqr(pi());
    const Interval r = powf(pi2, Interval(0.125));
    CHECK(r.contains(std::pow(M_PI, 0.25)));
    CHECK(r.width() < 1e-14);
    CHECK_THROWS_AS(sqrt(Interval(-1, 1)), Error);
    CHECK_THROWS_AS(powf(Interval(-1, 1), Interval(0.5)), Error);
}

TEST_CASE("interval: gamma")
{
    CHECK(gamma(Interval(2.0)).contains(1.0));
    CHECK(gamma(Interval(3.0)).contains(2.0));
    const Interval g = gamma(Interval(1.5));
    CHECK(g.contains(0.88622692545275801));
    CHECK(g.width() < 1e-12);
    CHECK(gamma(Interval(1.4, 1.5)).lo() <= 0.88560319441088870);
    CHECK_THROWS_AS(gamma(Interval(0.0, 1.0)), Error);
}

TEST_CASE("interval: next_after_up")
{
    CHECK(next_after_up(0.0) == 4.9406564584124654e-324);
    CHECK(next_after_up(1.0) == 1.0 + 0x1p-52);
    CHECK(next_after_up(next_after_up(0.0)) == 2 * 4.9406564584124654e-324);
}

TEST_CASE("interval: directed rounding agrees with rationals")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const double a = random_double(rng);
        double b = random_double(rng);
        const Rational qa = to_rational(a);
        const Rational qb = to_rational(b);
        CHECK(to_rational(rnd::add_down(a, b)) <= qa + qb);
        CHECK(to_rational(rnd::add_up(a, b)) >= qa + qb);
        CHECK(to_rational(rnd::mul_down(a, b)) <= qa * qb);
        CHECK(to_rational(rnd::mul_up(a, b)) >= qa * qb);
        if (b != 0.0) {
            CHECK(to_rational(rnd::div_down(a, b)) <= qa / qb);
            CHECK(to_rational(rnd::div_up(a, b)) >= qa / qb);
        }
        const double s = std::fabs(a);
        const Rational d = to_rational(rnd::sqrt_down(s));
        const Rational u = to_rational(rnd::sqrt_up(s));
        CHECK(d * d <= to_rational(s));
        CHECK(u * u >= to_rational(s));
    }
}

TEST_CASE("interval: inclusion monotonicity")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const double a0 = random_double(rng), a1 = random_double(rng);
        const double b0 = random_double(rng), b1 = random_double(rng);
        const Interval a = Interval::hull(a0, a1);
        const Interval b = Interval::hull(b0, b1);
        const Interval A = a + Interval(-1, 1);
        const Interval B = b + Interval(-1, 1);
        CHECK((a + b).subset_of(A + B));
        CHECK((a - b).subset_of(A - B));
        CHECK((a * b).subset_of(A * B));
        if (!B.contains_zero())
            CHECK((a / b).subset_of(A / B));
    }
}

TEST_CASE("interval: outward decimal formatting")
{
    CHECK(format_up(1.0, 9) == "1.00000000e+00");
    CHECK(format_down(1.0, 9) == "1.00000000e+00");
    const Interval t = Interval(1.0) / Interval(3.0);
    CHECK(to_string(t) == "[3.33333333e-01, 3.33333334e-01]");
    CHECK(format_down(-0.1, 3) == "-1.01e-01");
    CHECK(format_up(9.999999999, 3) == "1.00e+01");
}
