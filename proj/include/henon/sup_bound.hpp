#pragma once

// Rigorous upper bounds for the maximum of expressions in u-hat over the
// closed box, by branch-and-bound on dyadic cells.  Cell bounds use the
// value, gradient and Hessian at the centre (enclosed from exact rational
// basis values) plus a global bound on the third derivatives.

#include "henon/interval.hpp"
#include "henon/legendre.hpp"
#include "henon/problem.hpp"

#include <functional>
#include <map>
#include <span>
#include <vector>

namespace henon {

// u = sum_ab U_ab phi_a(x) phi_b(y) (or sum_a U_a phi_a(x)) with enclosures of
// the 2-jet at points and global third-derivative bounds.
class TensorEvaluator {
public:
    TensorEvaluator(const SymmetrySpace& space, std::span<const double> coeffs);

    int N() const { return N_; }
    int M() const { return M_; }

    struct Jet {
        Interval value;
        Interval dx;
        Interval dy;
        Interval dxx;
        Interval dxy;
        Interval dyy;
    };
    // x, y must be dyadic in [0,1] (any double is).
    Jet jet(double x, double y = 0.5);

    // Upper bound of sum over |alpha| = 3 of C(3,alpha) sup |D^alpha u|.
    double third() const { return third_; }

private:
    struct PhiTable {
        std::vector<Interval> phi;
        std::vector<Interval> dphi;
        std::vector<Interval> d2phi;
    };
    const PhiTable& table(double x);

    int N_;
    int M_;
    std::vector<double> U_;
    double third_ = 0;
    std::map<double, PhiTable> cache_;
};

struct SupResult {
    Interval value;        // [best sampled value, rigorous upper bound]
    bool warning = false;  // depth cap or cell budget hit before the tolerance
    long cells = 0;
};

struct SupOptions {
    double rel_tol = 1e-3;
    int max_depth = 40;
    long max_cells = 1000000;
};

// Bound for max of g over the box given a cell bound:
//   cell(center, half_width, jet) -> {lower estimate at the centre, upper bound on the cell}.
using CellBound = std::function<std::pair<double, double>(const std::vector<double>& center, double half,
                                                          const TensorEvaluator::Jet& jet)>;
SupResult branch_and_bound(TensorEvaluator& ev, const CellBound& cell, const SupOptions& opt);

// Range of u on the cell with centre jet and half-width h.
Interval taylor_range(const TensorEvaluator& ev, const TensorEvaluator::Jet& jet, double h);

// max over the box of u-hat; value.hi() is the rigorous upper bound.
SupResult peak_bound(const SymmetrySpace& space, std::span<const double> coeffs, const SupOptions& opt = {1e-7, 40, 1000000});

} // namespace henon
