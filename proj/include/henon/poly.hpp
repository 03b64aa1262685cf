#pragma once

// Dense polynomials in one or two variables over the monomial basis,
// parameterized by the coefficient ring (Rational, BigInt, Interval, double).

#include "henon/error.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace henon {

template <class T>
class PolySeries {
public:
    PolySeries() = default;

    // Zero polynomial with degree bounds (dx, dy); dy must be 0 when nvars == 1.
    PolySeries(int nvars, int dx, int dy = 0) : nvars_(nvars), dx_(dx), dy_(nvars == 1 ? 0 : dy)
    {
        if (nvars != 1 && nvars != 2)
            throw Error("bad-dimension", "polynomials are univariate or bivariate");
        if (dx < 0 || dy < 0)
            throw Error("bad-degree", "negative degree bound");
        c_.assign(static_cast<std::size_t>((dx_ + 1) * (dy_ + 1)), T(0));
    }

    static PolySeries constant(int nvars, const T& value)
    {
        PolySeries p(nvars, 0, 0);
        p.c_[0] = value;
        return p;
    }

    int nvars() const { return nvars_; }
    int degree_x() const { return dx_; }
    int degree_y() const { return dy_; }

    T& at(int a, int b = 0) { return c_[static_cast<std::size_t>(a * (dy_ + 1) + b)]; }
    const T& at(int a, int b = 0) const { return c_[static_cast<std::size_t>(a * (dy_ + 1) + b)]; }

    // Coefficient of x^a y^b, zero outside the stored range.
    T coeff(int a, int b = 0) const
    {
        if (a < 0 || b < 0 || a > dx_ || b > dy_)
            return T(0);
        return at(a, b);
    }

    const std::vector<T>& data() const { return c_; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const T& v) { return v == T(0); });
    }

    PolySeries& operator+=(const PolySeries& o)
    {
        check_compatible(o);
        PolySeries r(nvars_, std::max(dx_, o.dx_), std::max(dy_, o.dy_));
        for (int a = 0; a <= dx_; ++a)
            for (int b = 0; b <= dy_; ++b)
                r.at(a, b) = at(a, b);
        for (int a = 0; a <= o.dx_; ++a)
            for (int b = 0; b <= o.dy_; ++b)
                r.at(a, b) += o.at(a, b);
        return *this = std::move(r);
    }

    PolySeries& operator-=(const PolySeries& o)
    {
        PolySeries neg = o;
        for (auto& v : neg.c_)
            v = -v;
        return *this += neg;
    }

    PolySeries& operator*=(const T& s)
    {
        for (auto& v : c_)
            v *= s;
        return *this;
    }

    friend PolySeries operator+(PolySeries a, const PolySeries& b) { return a += b; }
    friend PolySeries operator-(PolySeries a, const PolySeries& b) { return a -= b; }
    friend PolySeries operator*(PolySeries a, const T& s) { return a *= s; }

    friend PolySeries operator*(const PolySeries& p, const PolySeries& q)
    {
        p.check_compatible(q);
        PolySeries r(p.nvars_, p.dx_ + q.dx_, p.dy_ + q.dy_);
        for (int a = 0; a <= p.dx_; ++a)
            for (int b = 0; b <= p.dy_; ++b) {
                const T& pab = p.at(a, b);
                if (pab == T(0))
                    continue;
                for (int c = 0; c <= q.dx_; ++c)
                    for (int d = 0; d <= q.dy_; ++d)
                        r.at(a + c, b + d) += pab * q.at(c, d);
            }
        return r;
    }

    // Partial derivative in variable 0 (x) or 1 (y).
    PolySeries derivative(int var) const
    {
        if (var == 0) {
            PolySeries r(nvars_, std::max(dx_ - 1, 0), dy_);
            for (int a = 1; a <= dx_; ++a)
                for (int b = 0; b <= dy_; ++b)
                    r.at(a - 1, b) = at(a, b) * T(a);
            return r;
        }
        if (nvars_ == 1)
            return PolySeries(1, 0);
        PolySeries r(nvars_, dx_, std::max(dy_ - 1, 0));
        for (int a = 0; a <= dx_; ++a)
            for (int b = 1; b <= dy_; ++b)
                r.at(a, b - 1) = at(a, b) * T(b);
        return r;
    }

    // p(y, x); identity for univariate polynomials.
    PolySeries swapped() const
    {
        if (nvars_ == 1)
            return *this;
        PolySeries r(2, dy_, dx_);
        for (int a = 0; a <= dx_; ++a)
            for (int b = 0; b <= dy_; ++b)
                r.at(b, a) = at(a, b);
        return r;
    }

    template <class X>
    X evaluate(const X& x, const X& y = X(0)) const
    {
        X acc(0);
        for (int a = dx_; a >= 0; --a) {
            X inner(0);
            for (int b = dy_; b >= 0; --b)
                inner = inner * y + X(at(a, b));
            acc = acc * x + inner;
        }
        return acc;
    }

private:
    void check_compatible(const PolySeries& o) const
    {
        if (nvars_ != o.nvars_)
            throw Error("shape-mismatch", "polynomials in different numbers of variables");
    }

    int nvars_ = 1;
    int dx_ = 0;
    int dy_ = 0;
    std::vector<T> c_{T(0)};
};

// Tensor product p(x) q(y) of two univariate polynomials.
template <class T>
PolySeries<T> tensor(const PolySeries<T>& p, const PolySeries<T>& q)
{
    PolySeries<T> r(2, p.degree_x(), q.degree_x());
    for (int a = 0; a <= p.degree_x(); ++a)
        for (int b = 0; b <= q.degree_x(); ++b)
            r.at(a, b) = p.at(a) * q.at(b);
    return r;
}

} // namespace henon
