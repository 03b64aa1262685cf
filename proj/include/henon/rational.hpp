#pragma once

// Exact rational / big-integer arithmetic (GMP) and the single outward
// rounding step that turns an exact value into an Interval.

#include "henon/interval.hpp"

#include <gmpxx.h>

namespace henon {

using BigInt = mpz_class;
using Rational = mpq_class;

// Exact: every finite double is a dyadic rational.
Rational to_rational(double x);

// Tightest binary64 interval containing q.
Interval enclose(const Rational& q);

// lcm(1, 2, ..., n); lcm_upto(0) == 1.
BigInt lcm_upto(unsigned n);

// Binomial coefficient C(n, k).
BigInt binomial(unsigned n, unsigned k);

} // namespace henon
