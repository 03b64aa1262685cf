#include "henon/rational.hpp"

#include "henon/error.hpp"

#include <cmath>

namespace henon {

Rational to_rational(double x)
{
    if (!std::isfinite(x))
        throw Error("non-finite", "cannot convert a non-finite double to a rational");
    return Rational(x);
}

Interval enclose(const Rational& q)
{
    // mpq_get_d truncates toward zero; walk outward with exact comparisons
    // so the result does not depend on platform behaviour near under/overflow.
    double lo = q.get_d();
    double hi = lo;
    if (!std::isfinite(lo))
        throw Error("overflow", "rational value exceeds binary64 range");
    while (Rational(lo) > q)
        lo = rnd::next_down(lo);
    while (Rational(hi) < q)
        hi = rnd::next_up(hi);
    return Interval(lo, hi);
}

BigInt lcm_upto(unsigned n)
{
    BigInt l = 1;
    for (unsigned k = 2; k <= n; ++k)
        mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), k);
    return l;
}

BigInt binomial(unsigned n, unsigned k)
{
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

} // namespace henon
