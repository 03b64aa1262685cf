#include "oracles.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <stdexcept>

namespace oracle {

BigRationalPoly& BigRationalPoly::operator+=(const BigRationalPoly& o)
{
    for (const auto& [k, v] : o.c)
        c[k] += v;
    return *this;
}

BigRationalPoly operator*(const BigRationalPoly& a, const BigRationalPoly& b)
{
    BigRationalPoly r;
    for (const auto& [ka, va] : a.c)
        for (const auto& [kb, vb] : b.c)
            r.c[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    return r;
}

BigRationalPoly operator*(const BigRationalPoly& a, const Rat& s)
{
    BigRationalPoly r = a;
    for (auto& [k, v] : r.c)
        v *= s;
    return r;
}

BigRationalPoly BigRationalPoly::swapped() const
{
    BigRationalPoly r;
    for (const auto& [k, v] : c)
        r.c[{k.second, k.first}] = v;
    return r;
}

BigRationalPoly BigRationalPoly::dx() const
{
    BigRationalPoly r;
    for (const auto& [k, v] : c)
        if (k.first > 0)
            r.c[{k.first - 1, k.second}] += v * k.first;
    return r;
}

BigRationalPoly monomial(int a, int b, const Rat& c)
{
    BigRationalPoly r;
    r.c[{a, b}] = c;
    return r;
}

BigRationalPoly phi(int n)
{
    // P_k(t), t = 2x - 1, as polynomials in x
    BigRationalPoly t = monomial(1, 0, 2);
    t += monomial(0, 0, -1);
    std::vector<BigRationalPoly> P{monomial(0, 0, 1), t};
    for (int k = 1; k <= n; ++k) {
        BigRationalPoly next = t * P[k] * Rat(2 * k + 1, k + 1);
        next += P[k - 1] * Rat(-k, k + 1);
        P.push_back(next);
    }
    BigRationalPoly r = P[n - 1];
    r += P[n + 1] * Rat(-1);
    return r * Rat(1, 2 * (2 * n + 1));
}

Rat oracle_integrate(const BigRationalPoly& p)
{
    Rat s = 0;
    for (const auto& [k, v] : p.c)
        s += v / Rat((k.first + 1) * (k.second + 1));
    return s;
}

Dec oracle_constant(const std::string& name, const ConstParams& k)
{
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;
    const Dec pi = boost::math::constants::pi<Dec>();
    const Dec tau(k.tau);
    if (name == "C2")
        return 1 / sqrt(k.N * pi * pi + tau);
    if (name == "Cp1D") {
        const Dec eps = Dec(2) / Dec(k.p);
        const Dec rho = pi * pi;
        if (rho <= tau * (1 - eps) / (1 + eps))
            return 1 / sqrt(Dec(2)) * pow(1 - eps, (1 - eps) / 4) * pow(1 + eps, (1 + eps) / 4) / pow(tau, (1 + eps) / 4);
        return pow(rho, (1 - eps) / 4) / sqrt(rho + tau);
    }
    if (name == "CpND") {
        const Dec n(k.N), p(k.p);
        const Dec q = n * p / (n + p);
        const Dec g = boost::math::tgamma(1 + n / 2) * boost::math::tgamma(n) /
                      (boost::math::tgamma(n / q) * boost::math::tgamma(1 + n - n / q));
        return 1 / sqrt(pi) * pow(n, -1 / q) * pow((q - 1) / (n - q), 1 - 1 / q) * pow(g, 1 / n);
    }
    if (name == "CM" || name == "CMtau") {
        const Dec m(k.M);
        const Dec t1 = 1 / (2 * (2 * m + 1) * (2 * m + 5));
        const Dec t2 = 1 / (4 * (2 * m + 5) * sqrt(2 * m + 3) * sqrt(2 * m + 7));
        const Dec t3 = 1 / (2 * (2 * m + 5) * (2 * m + 9));
        const Dec t4 = 1 / (4 * (2 * m + 9) * sqrt(2 * m + 7) * sqrt(2 * m + 11));
        const Dec a = t1 + t2, b = t2 + t3 + t4;
        const Dec c = sqrt(a > b ? a : b);
        if (name == "CM")
            return c;
        return c * sqrt(1 + tau * c * c);
    }
    if (name == "d")
        return k.l == 0 ? Dec(1) : pow(Dec(k.N) / 4, Dec(k.l) / 2);
    throw std::invalid_argument("unknown constant " + name);
}

std::vector<Dec> oracle_eigs(const std::vector<std::vector<Rat>>& A, const std::vector<std::vector<Rat>>& B)
{
    using boost::multiprecision::abs;
    using boost::multiprecision::sqrt;
    const std::size_t n = A.size();
    std::vector<std::vector<Dec>> L(n, std::vector<Dec>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        Dec s = Dec(B[j][j]);
        for (std::size_t k = 0; k < j; ++k)
            s -= L[j][k] * L[j][k];
        if (s <= 0)
            throw std::invalid_argument("B is not positive definite");
        L[j][j] = sqrt(s);
        for (std::size_t i = j + 1; i < n; ++i) {
            Dec t = Dec(B[i][j]);
            for (std::size_t k = 0; k < j; ++k)
                t -= L[i][k] * L[j][k];
            L[i][j] = t / L[j][j];
        }
    }
    // C = L^{-1} A L^{-T}
    std::vector<std::vector<Dec>> Y(n, std::vector<Dec>(n, 0)), C(n, std::vector<Dec>(n, 0));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            Dec t = Dec(A[i][c]);
            for (std::size_t k = 0; k < i; ++k)
                t -= L[i][k] * Y[k][c];
            Y[i][c] = t / L[i][i];
        }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            Dec t = Y[r][i];
            for (std::size_t k = 0; k < i; ++k)
                t -= L[i][k] * C[r][k];
            C[r][i] = t / L[i][i];
        }
    for (int sweep = 0; sweep < 100; ++sweep) {
        Dec off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += C[p][q] * C[p][q];
        if (off < Dec("1e-100"))
            break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (C[p][q] == 0)
                    continue;
                const Dec theta = (C[q][q] - C[p][p]) / (2 * C[p][q]);
                const Dec t = (theta >= 0 ? 1 : -1) / (abs(theta) + sqrt(theta * theta + 1));
                const Dec c = 1 / sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const Dec a = C[k][p], b = C[k][q];
                    C[k][p] = c * a - s * b;
                    C[k][q] = s * a + c * b;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Dec a = C[p][k], b = C[q][k];
                    C[p][k] = c * a - s * b;
                    C[q][k] = s * a + c * b;
                }
            }
    }
    std::vector<Dec> ev;
    for (std::size_t i = 0; i < n; ++i)
        ev.push_back(C[i][i]);
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace oracle
