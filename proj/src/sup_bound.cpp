#include "henon/sup_bound.hpp"

#include "henon/rational.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace henon {

TensorEvaluator::TensorEvaluator(const SymmetrySpace& space, std::span<const double> coeffs)
    : N_(space.N), M_(space.M), U_(to_tensor(space, coeffs))
{
    using namespace rnd;
    // |phi_a| <= 1/(2a+1), |phi_a'| <= 1, |phi_a''| <= a(a+1),
    // |phi_a'''| <= (a-1)a(a+1)(a+2)/2
    auto d3 = [](int a) { return (a - 1.0) * a * (a + 1.0) * (a + 2.0) / 2; };
    if (N_ == 1) {
        for (int a = 1; a <= M_; ++a)
            third_ = add_up(third_, mul_up(std::fabs(U_[a - 1]), d3(a)));
        return;
    }
    double txxx = 0, txxy = 0, txyy = 0, tyyy = 0;
    for (int a = 1; a <= M_; ++a)
        for (int b = 1; b <= M_; ++b) {
            const double c = std::fabs(U_[static_cast<std::size_t>((a - 1) * M_ + (b - 1))]);
            if (c == 0)
                continue;
            txxx = add_up(txxx, div_up(mul_up(c, d3(a)), 2.0 * b + 1));
            tyyy = add_up(tyyy, div_up(mul_up(c, d3(b)), 2.0 * a + 1));
            txxy = add_up(txxy, mul_up(c, a * (a + 1.0)));
            txyy = add_up(txyy, mul_up(c, b * (b + 1.0)));
        }
    third_ = add_up(add_up(txxx, tyyy), mul_up(3.0, add_up(txxy, txyy)));
}

const TensorEvaluator::PhiTable& TensorEvaluator::table(double x)
{
    auto it = cache_.find(x);
    if (it != cache_.end())
        return it->second;
    if (cache_.size() > 200000)
        cache_.clear();
    // exact Legendre recurrence at t = 2x - 1
    const Rational t = Rational(2) * to_rational(x) - 1;
    std::vector<Rational> P(static_cast<std::size_t>(M_ + 2)), dP(static_cast<std::size_t>(M_ + 2));
    P[0] = 1;
    P[1] = t;
    dP[0] = 0;
    dP[1] = 1;
    for (int n = 1; n <= M_; ++n) {
        P[n + 1] = (Rational(2 * n + 1) * t * P[n] - Rational(n) * P[n - 1]) / Rational(n + 1);
        dP[n + 1] = dP[n - 1] + Rational(2 * n + 1) * P[n];
    }
    PhiTable tb;
    tb.phi.resize(static_cast<std::size_t>(M_));
    tb.dphi.resize(static_cast<std::size_t>(M_));
    tb.d2phi.resize(static_cast<std::size_t>(M_));
    for (int n = 1; n <= M_; ++n) {
        tb.phi[n - 1] = enclose(Rational(P[n - 1] - P[n + 1]) / Rational(2 * (2 * n + 1)));
        tb.dphi[n - 1] = enclose(Rational(-P[n]));
        tb.d2phi[n - 1] = enclose(Rational(-2 * dP[n]));
    }
    return cache_.emplace(x, std::move(tb)).first->second;
}

TensorEvaluator::Jet TensorEvaluator::jet(double x, double y)
{
    Jet j{};
    const PhiTable tx = table(x); // copy: the cache may rehash below
    if (N_ == 1) {
        for (int a = 0; a < M_; ++a) {
            if (U_[a] == 0)
                continue;
            j.value += tx.phi[a] * U_[a];
            j.dx += tx.dphi[a] * U_[a];
            j.dxx += tx.d2phi[a] * U_[a];
        }
        return j;
    }
    const PhiTable& ty = table(y);
    for (int a = 0; a < M_; ++a) {
        Interval s(0.0), t(0.0), r(0.0);
        for (int b = 0; b < M_; ++b) {
            const double c = U_[static_cast<std::size_t>(a * M_ + b)];
            if (c == 0)
                continue;
            s += ty.phi[b] * c;
            t += ty.dphi[b] * c;
            r += ty.d2phi[b] * c;
        }
        j.value += tx.phi[a] * s;
        j.dx += tx.dphi[a] * s;
        j.dy += tx.phi[a] * t;
        j.dxx += tx.d2phi[a] * s;
        j.dxy += tx.dphi[a] * t;
        j.dyy += tx.phi[a] * r;
    }
    return j;
}

Interval taylor_range(const TensorEvaluator& ev, const TensorEvaluator::Jet& jet, double h)
{
    using namespace rnd;
    // u(c+d) = u(c) + g.d + d'H d / 2 + R,  |d_i| <= h,  |R| <= third * h^3 / 6
    const double h2 = mul_up(h, h);
    double lin = mul_up(jet.dx.mag(), h);
    double qup = mul_up(std::max(0.0, jet.dxx.hi()), h2);
    double qdn = mul_up(std::max(0.0, -jet.dxx.lo()), h2);
    if (ev.N() == 2) {
        lin = add_up(lin, mul_up(jet.dy.mag(), h));
        const double cross = mul_up(2.0, mul_up(jet.dxy.mag(), h2));
        qup = add_up(add_up(qup, mul_up(std::max(0.0, jet.dyy.hi()), h2)), cross);
        qdn = add_up(add_up(qdn, mul_up(std::max(0.0, -jet.dyy.lo()), h2)), cross);
    }
    const double rem = div_up(mul_up(ev.third(), mul_up(h2, h)), 6.0);
    const double up = add_up(add_up(lin, mul_up(0.5, qup)), rem);
    const double dn = add_up(add_up(lin, mul_up(0.5, qdn)), rem);
    return Interval(sub_down(jet.value.lo(), dn), add_up(jet.value.hi(), up));
}

SupResult branch_and_bound(TensorEvaluator& ev, const CellBound& cell, const SupOptions& opt)
{
    struct Cell {
        std::vector<double> c;
        double h;
        int depth;
        double upper;
        bool operator<(const Cell& o) const { return upper < o.upper; }
    };
    const int N = ev.N();
    auto eval = [&](std::vector<double> c, double h, int depth, double& best) {
        const auto jet = ev.jet(c[0], N == 2 ? c[1] : 0.5);
        const auto [lo, up] = cell(c, h, jet);
        best = std::max(best, lo);
        return Cell{std::move(c), h, depth, up};
    };
    SupResult res;
    double best = -std::numeric_limits<double>::infinity();
    double frozen = -std::numeric_limits<double>::infinity();
    std::priority_queue<Cell> q;
    q.push(eval(std::vector<double>(static_cast<std::size_t>(N), 0.5), 0.5, 0, best));
    res.cells = 1;
    double upper = q.top().upper;
    while (!q.empty()) {
        Cell top = q.top();
        upper = std::max(top.upper, frozen);
        if (upper <= best + opt.rel_tol * std::fabs(best))
            break;
        if (res.cells >= opt.max_cells) {
            res.warning = true;
            break;
        }
        q.pop();
        if (top.upper <= best)
            continue;
        if (top.depth >= opt.max_depth) {
            frozen = std::max(frozen, top.upper);
            res.warning = true;
            continue;
        }
        const double h = top.h / 2;
        for (int k = 0; k < (1 << N); ++k) {
            std::vector<double> c = top.c;
            for (int d = 0; d < N; ++d)
                c[d] += (k >> d & 1) ? h : -h;
            Cell child = eval(std::move(c), h, top.depth + 1, best);
            ++res.cells;
            if (child.upper > best)
                q.push(std::move(child));
        }
        if (q.empty())
            upper = std::max(frozen, best);
    }
    upper = std::max(upper, best);
    res.value = Interval(best, upper);
    return res;
}

SupResult peak_bound(const SymmetrySpace& space, std::span<const double> coeffs, const SupOptions& opt)
{
    TensorEvaluator ev(space, coeffs);
    const CellBound cell = [&ev](const std::vector<double>&, double h, const TensorEvaluator::Jet& jet) {
        return std::pair{jet.value.lo(), taylor_range(ev, jet, h).hi()};
    };
    return branch_and_bound(ev, cell, opt);
}

} // namespace henon
