#pragma once

// Exact polynomials stored as  scale * sum c_ab x^a y^b  with big-integer
// coefficients and one rational scale.  Products and integrals stay in mpz
// arithmetic; rationals appear only when a final scalar is formed.

#include "henon/legendre.hpp"
#include "henon/poly.hpp"
#include "henon/rational.hpp"

#include <span>
#include <vector>

namespace henon {

class ExactPoly {
public:
    ExactPoly() = default;
    ExactPoly(PolySeries<BigInt> coeffs, Rational scale);

    static ExactPoly from_rational(const PolySeries<Rational>& p);
    // u = sum_k coeffs_k basis_k for the given space; exact.
    static ExactPoly from_solution(const SymmetrySpace& space, std::span<const double> coeffs);

    int nvars() const { return c_.nvars(); }
    int degree_x() const { return c_.degree_x(); }
    int degree_y() const { return c_.degree_y(); }
    const PolySeries<BigInt>& coeffs() const { return c_; }
    const Rational& scale() const { return s_; }
    bool is_zero() const { return s_ == 0 || c_.is_zero(); }

    PolySeries<Rational> to_rational() const;

    ExactPoly derivative(int var) const;
    ExactPoly laplacian() const;
    ExactPoly scaled(const Rational& f) const;

    friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
    friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
    friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);

    // Integral over the unit box.
    Rational integrate() const;
    Rational evaluate(const Rational& x, const Rational& y = Rational(0)) const;

private:
    PolySeries<BigInt> c_{1, 0};
    Rational s_{0};
};

// Integral of a*b over the unit box without forming the product.
Rational inner(const ExactPoly& a, const ExactPoly& b);

// phi_n = psi[n-1] / D with integer coefficient vectors psi (degree n+1).
struct IntegerBasis {
    BigInt D;
    std::vector<std::vector<BigInt>> psi;
};
IntegerBasis integer_basis(int M);

// m[(a,c)][s] = integral_0^1 x^s phi_a phi_c dx, returned as integers over the
// common denominator `den`, for the requested index pairs and s = 0..smax.
struct MomentTable {
    Rational den_inv; // 1 / den
    std::vector<std::vector<BigInt>> m;
};
MomentTable basis_moments(const IntegerBasis& basis, const std::vector<std::pair<int, int>>& pairs, int smax);

} // namespace henon
