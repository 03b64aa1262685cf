#include "henon/interval.hpp"

#include "henon/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace henon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude TwoProduct / division remainders may be inexact
// (underflow); we fall back to a one-ulp outward step, which always covers
// a round-to-nearest error.
constexpr double kTiny = 0x1p-900;
constexpr double kHuge = 0x1p+1000;

// Exact error of a + b: a + b = s + err (TwoSum).
inline double two_sum_err(double a, double b, double s)
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

} // namespace

namespace rnd {

double add_down(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s))
        return std::isnan(s) ? s : (s > 0 ? std::numeric_limits<double>::max() : s);
    return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s))
        return std::isnan(s) ? s : (s < 0 ? -std::numeric_limits<double>::max() : s);
    return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b)
{
    if (a == 0.0 || b == 0.0)
        return 0.0;
    const double p = a * b;
    if (!std::isfinite(p))
        return std::isnan(p) ? p : (p > 0 ? std::numeric_limits<double>::max() : p);
    if (std::fabs(p) < kTiny)
        return (a > 0) == (b > 0) ? std::max(0.0, next_down(p)) : next_down(p);
    return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

double mul_up(double a, double b)
{
    if (a == 0.0 || b == 0.0)
        return 0.0;
    const double p = a * b;
    if (!std::isfinite(p))
        return std::isnan(p) ? p : (p < 0 ? -std::numeric_limits<double>::max() : p);
    if (std::fabs(p) < kTiny)
        return (a > 0) != (b > 0) ? std::min(0.0, next_up(p)) : next_up(p);
    return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

namespace {

// Sign of (a/b - q) where q = fl(a/b); 0 when exact, 2 when undecidable.
int div_residual_sign(double a, double b, double q)
{
    const double fa = std::fabs(a);
    const double fq = std::fabs(q);
    if (fa < kTiny || fq < kTiny || fq > kHuge || std::fabs(b) < kTiny || std::fabs(b) > kHuge)
        return 2;
    const double r = std::fma(-q, b, a); // a - q*b, exact
    if (r == 0.0)
        return 0;
    return ((r > 0) == (b > 0)) ? 1 : -1;
}

} // namespace

double div_down(double a, double b)
{
    if (a == 0.0)
        return 0.0;
    const double q = a / b;
    if (!std::isfinite(q))
        return std::isnan(q) ? q : (q > 0 ? std::numeric_limits<double>::max() : q);
    const int s = div_residual_sign(a, b, q);
    if (s == 2 && (a > 0) == (b > 0))
        return std::max(0.0, next_down(q));
    return (s == -1 || s == 2) ? next_down(q) : q;
}

double div_up(double a, double b)
{
    if (a == 0.0)
        return 0.0;
    const double q = a / b;
    if (!std::isfinite(q))
        return std::isnan(q) ? q : (q < 0 ? -std::numeric_limits<double>::max() : q);
    const int s = div_residual_sign(a, b, q);
    if (s == 2 && (a > 0) != (b > 0))
        return std::min(0.0, next_up(q));
    return (s == 1 || s == 2) ? next_up(q) : q;
}

double sqrt_down(double a)
{
    if (a == 0.0)
        return 0.0;
    const double s = std::sqrt(a);
    if (a < kTiny || !std::isfinite(s))
        return std::isfinite(s) ? std::max(0.0, next_down(s)) : s;
    return std::fma(-s, s, a) < 0 ? next_down(s) : s;
}

double sqrt_up(double a)
{
    if (a == 0.0)
        return 0.0;
    const double s = std::sqrt(a);
    if (a < kTiny || !std::isfinite(s))
        return std::isfinite(s) ? next_up(s) : s;
    return std::fma(-s, s, a) > 0 ? next_up(s) : s;
}

} // namespace rnd

double next_after_up(double x)
{
    return std::nextafter(x, kInf);
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
        throw Error("invalid-interval", "lower endpoint exceeds upper endpoint or is NaN");
}

Interval Interval::unbounded_above(double lo)
{
    Interval r;
    r.lo_ = lo;
    r.hi_ = kInf;
    return r;
}

Interval Interval::hull(double a, double b)
{
    return Interval(std::min(a, b), std::max(a, b));
}

double Interval::mid() const
{
    if (!is_bounded())
        return lo_;
    // halving subnormals rounds, keep the result inside
    return std::clamp(0.5 * lo_ + 0.5 * hi_, lo_, hi_);
}

double Interval::rad() const
{
    return rnd::mul_up(0.5, rnd::sub_up(hi_, lo_));
}

double Interval::width() const
{
    return rnd::sub_up(hi_, lo_);
}

double Interval::mag() const
{
    return std::max(std::fabs(lo_), std::fabs(hi_));
}

double Interval::mig() const
{
    if (contains_zero())
        return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
}

Interval& Interval::operator+=(const Interval& b) { return *this = *this + b; }
Interval& Interval::operator-=(const Interval& b) { return *this = *this - b; }
Interval& Interval::operator*=(const Interval& b) { return *this = *this * b; }
Interval& Interval::operator/=(const Interval& b) { return *this = *this / b; }

Interval operator+(const Interval& a, const Interval& b)
{
    const double hi = (a.hi() == kInf || b.hi() == kInf) ? kInf : rnd::add_up(a.hi(), b.hi());
    const double lo = rnd::add_down(a.lo(), b.lo());
    return hi == kInf ? Interval::unbounded_above(lo) : Interval(lo, hi);
}

Interval operator-(const Interval& a)
{
    if (!a.is_bounded())
        throw Error("unbounded-interval", "negation of an interval unbounded above");
    return Interval(-a.hi(), -a.lo());
}

Interval operator-(const Interval& a, const Interval& b)
{
    return a + (-b);
}

Interval operator*(const Interval& a, const Interval& b)
{
    if (!a.is_bounded() || !b.is_bounded()) {
        if (a.lo() >= 0 && b.lo() >= 0) {
            const double lo = rnd::mul_down(a.lo(), b.lo());
            const bool zero_hi = (a.hi() == 0.0 || b.hi() == 0.0);
            return zero_hi ? Interval(0.0) : Interval::unbounded_above(lo);
        }
        throw Error("unbounded-interval", "product with an unbounded interval of mixed sign");
    }
    const std::array<double, 4> lows{rnd::mul_down(a.lo(), b.lo()), rnd::mul_down(a.lo(), b.hi()),
                                     rnd::mul_down(a.hi(), b.lo()), rnd::mul_down(a.hi(), b.hi())};
    const std::array<double, 4> highs{rnd::mul_up(a.lo(), b.lo()), rnd::mul_up(a.lo(), b.hi()),
                                      rnd::mul_up(a.hi(), b.lo()), rnd::mul_up(a.hi(), b.hi())};
    return Interval(*std::min_element(lows.begin(), lows.end()), *std::max_element(highs.begin(), highs.end()));
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains_zero())
        throw Error("division-by-zero-interval", "divisor interval contains zero");
    if (!b.is_bounded()) {
        // b = [lo, inf) with lo > 0: a / b lies between 0 and a / lo.
        if (!a.is_bounded())
            throw Error("unbounded-interval", "unbounded / unbounded");
        const double x1 = rnd::div_down(a.lo(), b.lo());
        const double x2 = rnd::div_up(a.hi(), b.lo());
        return Interval(std::min(0.0, x1), std::max(0.0, x2));
    }
    if (!a.is_bounded()) {
        if (a.lo() >= 0 && b.lo() > 0)
            return Interval::unbounded_above(rnd::div_down(a.lo(), b.hi()));
        throw Error("unbounded-interval", "unbounded dividend of mixed sign");
    }
    const std::array<double, 4> lows{rnd::div_down(a.lo(), b.lo()), rnd::div_down(a.lo(), b.hi()),
                                     rnd::div_down(a.hi(), b.lo()), rnd::div_down(a.hi(), b.hi())};
    const std::array<double, 4> highs{rnd::div_up(a.lo(), b.lo()), rnd::div_up(a.lo(), b.hi()),
                                      rnd::div_up(a.hi(), b.lo()), rnd::div_up(a.hi(), b.hi())};
    const double lo = *std::min_element(lows.begin(), lows.end());
    if (std::isinf(lo))
        throw Error("overflow", "quotient below the double range");
    return Interval(lo, *std::max_element(highs.begin(), highs.end()));
}

Interval hull(const Interval& a, const Interval& b)
{
    const double lo = std::min(a.lo(), b.lo());
    const double hi = std::max(a.hi(), b.hi());
    return hi == kInf ? Interval::unbounded_above(lo) : Interval(lo, hi);
}

Interval intersect(const Interval& a, const Interval& b)
{
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi)
        throw Error("empty-intersection", "intervals are disjoint");
    return hi == kInf ? Interval::unbounded_above(lo) : Interval(lo, hi);
}

Interval abs(const Interval& a)
{
    if (a.lo() >= 0)
        return a;
    if (a.hi() <= 0)
        return -a;
    return Interval(0.0, a.mag());
}

Interval max(const Interval& a, const Interval& b)
{
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::max(a.hi(), b.hi());
    return hi == kInf ? Interval::unbounded_above(lo) : Interval(lo, hi);
}

Interval sqr(const Interval& a)
{
    return pow(a, 2);
}

Interval sqrt(const Interval& a)
{
    if (a.lo() < 0)
        throw Error("negative-sqrt", "square root of an interval with negative lower endpoint");
    if (!a.is_bounded())
        return Interval::unbounded_above(rnd::sqrt_down(a.lo()));
    return Interval(rnd::sqrt_down(a.lo()), rnd::sqrt_up(a.hi()));
}

namespace {

// x^k for x >= 0 with directed rounding; each factor is nonnegative so
// monotone rounding of every partial product keeps the direction.
double pow_nonneg(double x, int k, bool up)
{
    double r = 1.0;
    double base = x;
    while (k > 0) {
        if (k & 1)
            r = up ? rnd::mul_up(r, base) : rnd::mul_down(r, base);
        k >>= 1;
        if (k > 0)
            base = up ? rnd::mul_up(base, base) : rnd::mul_down(base, base);
    }
    return r;
}

} // namespace

Interval pow(const Interval& a, int k)
{
    if (k < 0)
        throw Error("negative-exponent", "integer power requires k >= 0");
    if (k == 0)
        return Interval(1.0);
    if (!a.is_bounded())
        throw Error("unbounded-interval", "power of an unbounded interval");
    if (k % 2 == 0) {
        const Interval m = abs(a);
        return Interval(pow_nonneg(m.lo(), k, false), pow_nonneg(m.hi(), k, true));
    }
    auto odd_down = [k](double x) { return x >= 0 ? pow_nonneg(x, k, false) : -pow_nonneg(-x, k, true); };
    auto odd_up = [k](double x) { return x >= 0 ? pow_nonneg(x, k, true) : -pow_nonneg(-x, k, false); };
    return Interval(odd_down(a.lo()), odd_up(a.hi()));
}

namespace {

// glibc documents exp/log within 1 ulp in round-to-nearest; we step four ulps
// outward to stay well clear of that bound.
constexpr int kLibmSlack = 4;

double step_down(double x, int n)
{
    for (int i = 0; i < n; ++i)
        x = rnd::next_down(x);
    return x;
}

double step_up(double x, int n)
{
    for (int i = 0; i < n; ++i)
        x = rnd::next_up(x);
    return x;
}

} // namespace

Interval exp(const Interval& a)
{
    if (!a.is_bounded())
        throw Error("unbounded-interval", "exp of an unbounded interval");
    const double lo = a.lo() == 0.0 ? 1.0 : std::max(0.0, step_down(std::exp(a.lo()), kLibmSlack));
    const double hi = a.hi() == 0.0 ? 1.0 : step_up(std::exp(a.hi()), kLibmSlack);
    if (hi == kInf)
        throw Error("overflow", "exp overflow");
    return Interval(lo, hi);
}

Interval log(const Interval& a)
{
    if (a.lo() <= 0)
        throw Error("nonpositive-log", "logarithm of an interval with nonpositive lower endpoint");
    const double lo = a.lo() == 1.0 ? 0.0 : step_down(std::log(a.lo()), kLibmSlack);
    if (!a.is_bounded())
        return Interval::unbounded_above(lo);
    const double hi = a.hi() == 1.0 ? 0.0 : step_up(std::log(a.hi()), kLibmSlack);
    return Interval(lo, hi);
}

Interval powf(const Interval& a, const Interval& e)
{
    if (a.lo() <= 0)
        throw Error("nonpositive-base", "real power requires a positive base");
    if (a.is_point() && a.lo() == 1.0)
        return Interval(1.0);
    return exp(e * log(a));
}

Interval pi()
{
    // 0x1.921fb54442d18p+1 is the binary64 nearest to pi and lies below it.
    constexpr double lo = 0x1.921fb54442d18p+1;
    return Interval(lo, rnd::next_up(lo));
}

Interval exact_ratio(long num, long den)
{
    return Interval(static_cast<double>(num)) / Interval(static_cast<double>(den));
}

namespace {

// log Gamma(z) for a point z >= 10 by the Stirling series through B_16 with
// the classical remainder bound for real positive arguments: the error is
// bounded by the first omitted term |B_18| / (18 * 17 * z^17).
Interval log_gamma_stirling(const Interval& z)
{
    struct Bern {
        long num;
        long den;
    };
    static constexpr std::array<Bern, 8> bern{{{1, 6}, {-1, 30}, {1, 42}, {-1, 30}, {5, 66}, {-691, 2730}, {7, 6}, {-3617, 510}}};

    const Interval half(0.5);
    Interval s = (z - half) * log(z) - z + half * log(Interval(2.0) * pi());
    const Interval zinv = Interval(1.0) / z;
    const Interval zinv2 = zinv * zinv;
    Interval zpow = zinv; // z^{-(2k-1)}
    for (std::size_t k = 1; k <= bern.size(); ++k) {
        const Interval b = exact_ratio(bern[k - 1].num, bern[k - 1].den);
        const Interval denom(static_cast<double>(2 * k * (2 * k - 1)));
        s += b / denom * zpow;
        zpow *= zinv2;
    }
    // zpow now holds z^{-17}; |B_18| = 43867/798.
    const Interval rem = exact_ratio(43867, 798) / Interval(18.0 * 17.0) * zpow;
    return s + Interval(-rem.hi(), rem.hi());
}

// Gamma at a point x > 0: shift up with Gamma(x) = Gamma(x + m) / (x (x+1) ... (x+m-1)).
Interval gamma_point(double x)
{
    Interval z(x);
    Interval prod(1.0);
    while (z.lo() < 10.0) {
        prod *= z;
        z += Interval(1.0);
    }
    return exp(log_gamma_stirling(z)) / prod;
}

// Gamma attains its minimum on (0, inf) at x* ~ 1.46163214496836; both
// brackets below are safely on either side, and 0.8856031944 is below the
// minimum value 0.88560319441088870...
constexpr double kGammaArgminLo = 1.4616321449;
constexpr double kGammaArgminHi = 1.4616321450;
constexpr double kGammaMinLower = 0.8856031944;

} // namespace

Interval gamma(const Interval& a)
{
    if (a.lo() <= 0)
        throw Error("nonpositive-gamma", "Gamma is only enclosed for positive arguments");
    if (!a.is_bounded())
        throw Error("unbounded-interval", "Gamma of an unbounded interval");
    const Interval glo = gamma_point(a.lo());
    if (a.is_point())
        return glo;
    const Interval ghi = gamma_point(a.hi());
    double lo = std::min(glo.lo(), ghi.lo());
    const double hi = std::max(glo.hi(), ghi.hi());
    // Decreasing left of the argmin, increasing right of it.
    if (a.lo() <= kGammaArgminHi && a.hi() >= kGammaArgminLo)
        lo = std::min(lo, kGammaMinLower);
    else if (a.hi() < kGammaArgminLo)
        lo = ghi.lo();
    else
        lo = glo.lo();
    return Interval(lo, hi);
}

std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    return os << to_string(x);
}

namespace {

// Decimal string with `significant` digits that is <= x (down) or >= x (up).
// strtod is correctly rounded and monotone, so strtod(d) < x proves d < x;
// otherwise the string is stepped one unit in its last digit.
std::string format_directed(double x, int significant, bool up)
{
    if (!std::isfinite(x))
        return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", significant - 1, x);
    const double back = std::strtod(buf, nullptr);
    if ((up && back > x) || (!up && back < x))
        return buf;
    if (x == 0.0)
        return buf;
    {
        // glibc prints the exact binary expansion; all-zero tail means exact.
        static thread_local char full[1100];
        std::snprintf(full, sizeof full, "%.800e", x);
        std::string f(full);
        const auto dot = f.find('.');
        const auto e = f.find('e');
        const std::string tail = f.substr(dot + static_cast<std::size_t>(significant), e - dot - static_cast<std::size_t>(significant));
        if (tail.find_first_not_of('0') == std::string::npos)
            return buf;
    }
    std::string s(buf);
    const auto epos = s.find('e');
    std::string mant = s.substr(0, epos);
    int exponent = std::stoi(s.substr(epos + 1));
    const bool negative = mant[0] == '-';
    if (negative)
        mant.erase(0, 1);
    // Moving away from zero increases |d|: that is the "up" direction for
    // positive x and the "down" direction for negative x.
    const bool away = (up != negative);
    std::string digits;
    for (char c : mant)
        if (c != '.')
            digits += c;
    if (away) {
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0 && digits[i] == '9')
            digits[i--] = '0';
        if (i < 0) {
            digits.insert(digits.begin(), '1');
            digits.pop_back();
            ++exponent;
        } else {
            ++digits[i];
        }
    } else {
        int i = static_cast<int>(digits.size()) - 1;
        while (i >= 0 && digits[i] == '0')
            digits[i--] = '9';
        --digits[i];
        if (digits[0] == '0') {
            digits.erase(0, 1);
            digits += '9';
            --exponent;
        }
    }
    std::string out = negative ? "-" : "";
    out += digits[0];
    if (digits.size() > 1) {
        out += '.';
        out += digits.substr(1);
    }
    char ebuf[16];
    std::snprintf(ebuf, sizeof ebuf, "e%+03d", exponent);
    return out + ebuf;
}

} // namespace

std::string format_down(double x, int significant) { return format_directed(x, significant, false); }
std::string format_up(double x, int significant) { return format_directed(x, significant, true); }

std::string to_string(const Interval& x, int significant)
{
    return "[" + format_down(x.lo(), significant) + ", " + format_up(x.hi(), significant) + "]";
}

} // namespace henon
