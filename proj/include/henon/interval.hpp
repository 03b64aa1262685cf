#pragma once

// Outward-rounded interval arithmetic over binary64.
//
// Directed rounding is realized with error-free transformations (TwoSum,
// FMA-based TwoProduct, exact division/sqrt remainders): the round-to-nearest
// result is nudged one ulp outward exactly when the exact result lies beyond
// it.  No global rounding mode is touched, so every function here is pure and
// thread-safe.

#include "henon/error.hpp"

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>

namespace henon {

namespace rnd {

double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);

inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

} // namespace rnd

// Smallest representable double strictly greater than x.
double next_after_up(double x);

class Interval {
public:
    constexpr Interval() = default;
    constexpr explicit Interval(double x) : lo_(x), hi_(x) {}
    // Throws henon::Error("invalid-interval") unless lo <= hi and neither is NaN.
    Interval(double lo, double hi);

    // [lo, +inf): the only sanctioned unbounded form.
    static Interval unbounded_above(double lo);
    static Interval hull(double a, double b);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const;
    double rad() const;        // upper bound of (hi - lo) / 2
    double width() const;      // upper bound of hi - lo
    double mag() const;        // max |x|
    double mig() const;        // min |x|

    bool is_bounded() const { return hi_ < std::numeric_limits<double>::infinity() && lo_ > -std::numeric_limits<double>::infinity(); }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return contains(0.0); }
    bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }
    bool is_point() const { return lo_ == hi_; }

    Interval& operator+=(const Interval& b);
    Interval& operator-=(const Interval& b);
    Interval& operator*=(const Interval& b);
    Interval& operator/=(const Interval& b);

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
// Throws henon::Error("division-by-zero-interval") if 0 is in b.
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);
Interval abs(const Interval& a);
Interval max(const Interval& a, const Interval& b);
Interval sqr(const Interval& a);

// Domain errors ("negative-sqrt", "nonpositive-log", ...) are thrown as henon::Error.
Interval sqrt(const Interval& a);
Interval pow(const Interval& a, int k);
Interval powf(const Interval& a, const Interval& e);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval gamma(const Interval& a);

// Enclosures of constants.
Interval pi();
Interval exact_ratio(long num, long den);

std::ostream& operator<<(std::ostream& os, const Interval& x);
// Endpoints printed in scientific notation and rounded outward.
std::string to_string(const Interval& x, int significant = 9);
std::string format_down(double x, int significant);
std::string format_up(double x, int significant);

} // namespace henon
