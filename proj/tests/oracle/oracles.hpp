#pragma once

// Brute-force reference implementations for the tests.  Boost.Multiprecision
// only; nothing here touches the GMP or interval code of the library.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;
using Dec = boost::multiprecision::cpp_dec_float_50;

// sum c_ab x^a y^b
struct BigRationalPoly {
    std::map<std::pair<int, int>, Rat> c;

    BigRationalPoly& operator+=(const BigRationalPoly& o);
    friend BigRationalPoly operator*(const BigRationalPoly& a, const BigRationalPoly& b);
    friend BigRationalPoly operator*(const BigRationalPoly& a, const Rat& s);
    BigRationalPoly swapped() const;  // p(y, x)
    BigRationalPoly dx() const;
};

BigRationalPoly monomial(int a, int b, const Rat& c);
// phi_n(x) = (P_{n-1}(2x-1) - P_{n+1}(2x-1)) / (2(2n+1)), Legendre by recurrence
BigRationalPoly phi(int n);

// Integral over the unit box.
Rat oracle_integrate(const BigRationalPoly& p);

// name in {C2, Cp1D, CpND, CM, CMtau, d}; params as named below.
struct ConstParams {
    int N = 1;
    double p = 4;
    double tau = 0;
    int M = 10;
    double l = 0;
};
Dec oracle_constant(const std::string& name, const ConstParams& k);

// Eigenvalues of A x = lambda B x (ascending), B SPD; Cholesky + cyclic Jacobi.
std::vector<Dec> oracle_eigs(const std::vector<std::vector<Rat>>& A, const std::vector<std::vector<Rat>>& B);

} // namespace oracle
