#include "henon/problem.hpp"

#include "henon/error.hpp"

#include <charconv>
#include <cmath>

namespace henon {

void ProblemSpec::validate() const
{
    if (N != 1 && N != 2)
        throw Error("bad-problem", "only N = 1 and N = 2 are supported");
    if (!(l >= 0.0) || !std::isfinite(l))
        throw Error("bad-problem", "l must be a finite nonnegative number");
    if (!(p >= 2.0) || !std::isfinite(p))
        throw Error("bad-problem", "p must be a finite number >= 2");
}

bool ProblemSpec::verified_eligible() const
{
    const bool l_even = l >= 0 && std::floor(l) == l && std::fmod(l, 2.0) == 0.0 && l <= 64;
    const bool p_odd = p >= 3 && std::floor(p) == p && std::fmod(p, 2.0) == 1.0 && p <= 15;
    return l_even && p_odd;
}

std::string exact_decimal(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc())
        throw Error("format", "cannot format double");
    return std::string(buf, ptr);
}

} // namespace henon
