#pragma once

#include <string>

namespace henon {

// One instance of  -Lap u = |x - x0|^l |u|^{p-1} u  on (0,1)^N,  u = 0 on the
// boundary, with x0 the centre of the box.
struct ProblemSpec {
    int N = 1;
    double l = 0.0;
    double p = 3.0;

    // Throws henon::Error("bad-problem") on N outside {1,2}, l < 0, p < 2.
    void validate() const;

    // The certified path needs polynomial nonlinearities: l a nonnegative
    // even integer and p an odd integer >= 3.
    bool verified_eligible() const;

    int l_int() const { return static_cast<int>(l); }
    int p_int() const { return static_cast<int>(p); }
};

// Shortest decimal string that parses back to exactly x.
std::string exact_decimal(double x);

} // namespace henon
