#include "henon/exact_poly.hpp"

#include <cmath>
#include <map>

namespace henon {

namespace {

Rational pow2(long e)
{
    Rational r(1);
    if (e >= 0)
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    r.canonicalize();
    return r;
}

// Writes the finite doubles xs as  2^E * ints  exactly.
long to_common_integers(std::span<const double> xs, std::vector<BigInt>& ints)
{
    long E = 0;
    bool any = false;
    for (double v : xs) {
        if (!std::isfinite(v))
            throw Error("non-finite", "coefficient is not finite");
        if (v == 0.0)
            continue;
        int ex = 0;
        std::frexp(v, &ex);
        const long e = ex - 53;
        E = any ? std::min(E, e) : e;
        any = true;
    }
    ints.assign(xs.size(), BigInt(0));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double v = xs[k];
        if (v == 0.0)
            continue;
        int ex = 0;
        const double f = std::frexp(v, &ex);
        BigInt m(static_cast<long>(std::ldexp(f, 53))); // exact: 53-bit integer
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(ex - 53 - E));
        ints[k] = m;
    }
    return E;
}

BigInt lcm_int(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

BigInt gcd_int(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Integer multipliers ma, mb and common scale g with  sa = ma g,  sb = mb g.
void common_scale(const Rational& sa, const Rational& sb, BigInt& ma, BigInt& mb, Rational& g)
{
    if (sa == 0) {
        ma = 0;
        mb = 1;
        g = sb;
        return;
    }
    if (sb == 0) {
        ma = 1;
        mb = 0;
        g = sa;
        return;
    }
    const BigInt gn = gcd_int(sa.get_num(), sb.get_num());
    const BigInt ld = lcm_int(sa.get_den(), sb.get_den());
    g = Rational(gn, ld);
    g.canonicalize();
    ma = BigInt(sa.get_num() / gn) * BigInt(ld / sa.get_den());
    mb = BigInt(sb.get_num() / gn) * BigInt(ld / sb.get_den());
}

PolySeries<BigInt> combine(const PolySeries<BigInt>& a, const BigInt& ma, const PolySeries<BigInt>& b, const BigInt& mb)
{
    PolySeries<BigInt> r(a.nvars(), std::max(a.degree_x(), b.degree_x()), std::max(a.degree_y(), b.degree_y()));
    for (int i = 0; i <= a.degree_x(); ++i)
        for (int j = 0; j <= a.degree_y(); ++j)
            mpz_addmul(r.at(i, j).get_mpz_t(), a.at(i, j).get_mpz_t(), ma.get_mpz_t());
    for (int i = 0; i <= b.degree_x(); ++i)
        for (int j = 0; j <= b.degree_y(); ++j)
            mpz_addmul(r.at(i, j).get_mpz_t(), b.at(i, j).get_mpz_t(), mb.get_mpz_t());
    return r;
}

// h[k] = L / (k+1) for k = 0..kmax with L = lcm(1..kmax+1).
std::vector<BigInt> hilbert_weights(int kmax, BigInt& L)
{
    L = lcm_upto(static_cast<unsigned>(kmax + 1));
    std::vector<BigInt> h(static_cast<std::size_t>(kmax + 1));
    for (int k = 0; k <= kmax; ++k)
        mpz_divexact_ui(h[k].get_mpz_t(), L.get_mpz_t(), static_cast<unsigned long>(k + 1));
    return h;
}

} // namespace

ExactPoly::ExactPoly(PolySeries<BigInt> coeffs, Rational scale) : c_(std::move(coeffs)), s_(std::move(scale)) {}

ExactPoly ExactPoly::from_rational(const PolySeries<Rational>& p)
{
    BigInt L = 1;
    for (const auto& q : p.data())
        if (q != 0)
            L = lcm_int(L, q.get_den());
    PolySeries<BigInt> c(p.nvars(), p.degree_x(), p.degree_y());
    for (int a = 0; a <= p.degree_x(); ++a)
        for (int b = 0; b <= p.degree_y(); ++b) {
            const Rational& q = p.at(a, b);
            c.at(a, b) = BigInt(q.get_num() * BigInt(L / q.get_den()));
        }
    return ExactPoly(std::move(c), Rational(1, L));
}

IntegerBasis integer_basis(int M)
{
    IntegerBasis out;
    out.D = 1;
    for (int n = 1; n <= M; ++n)
        out.D = lcm_int(out.D, BigInt(n) * (n + 1));
    for (int n = 1; n <= M; ++n) {
        const BasisFunction f = build_phi(n);
        std::vector<BigInt> v(static_cast<std::size_t>(n + 2));
        for (int k = 0; k <= n + 1; ++k) {
            Rational q = f.phi.coeff(k) * out.D;
            q.canonicalize();
            if (q.get_den() != 1)
                throw Error("internal", "basis denominator does not divide D");
            v[k] = q.get_num();
        }
        out.psi.push_back(std::move(v));
    }
    return out;
}

ExactPoly ExactPoly::from_solution(const SymmetrySpace& space, std::span<const double> coeffs)
{
    const std::vector<double> u = to_tensor(space, coeffs);
    std::vector<BigInt> U;
    const long E = to_common_integers(u, U);
    const int M = space.M;
    const IntegerBasis basis = integer_basis(M);
    if (space.N == 1) {
        PolySeries<BigInt> c(1, M + 1);
        for (int i = 1; i <= M; ++i) {
            if (U[i - 1] == 0)
                continue;
            const auto& psi = basis.psi[i - 1];
            for (std::size_t k = 0; k < psi.size(); ++k)
                mpz_addmul(c.at(static_cast<int>(k)).get_mpz_t(), psi[k].get_mpz_t(), U[i - 1].get_mpz_t());
        }
        return ExactPoly(std::move(c), pow2(E) / Rational(basis.D));
    }
    // C_ab = sum_j (sum_i U_ij psi_i[a]) psi_j[b]
    PolySeries<BigInt> c(2, M + 1, M + 1);
    std::vector<BigInt> R(static_cast<std::size_t>(M + 2));
    for (int j = 1; j <= M; ++j) {
        for (auto& r : R)
            r = 0;
        bool any = false;
        for (int i = 1; i <= M; ++i) {
            const BigInt& uij = U[static_cast<std::size_t>((i - 1) * M + (j - 1))];
            if (uij == 0)
                continue;
            any = true;
            const auto& psi = basis.psi[i - 1];
            for (std::size_t a = 0; a < psi.size(); ++a)
                mpz_addmul(R[a].get_mpz_t(), psi[a].get_mpz_t(), uij.get_mpz_t());
        }
        if (!any)
            continue;
        const auto& psj = basis.psi[j - 1];
        for (int a = 0; a <= M + 1; ++a) {
            if (R[a] == 0)
                continue;
            for (std::size_t b = 0; b < psj.size(); ++b)
                mpz_addmul(c.at(a, static_cast<int>(b)).get_mpz_t(), R[a].get_mpz_t(), psj[b].get_mpz_t());
        }
    }
    const Rational D(basis.D);
    return ExactPoly(std::move(c), pow2(E) / (D * D));
}

PolySeries<Rational> ExactPoly::to_rational() const
{
    PolySeries<Rational> r(c_.nvars(), c_.degree_x(), c_.degree_y());
    for (int a = 0; a <= c_.degree_x(); ++a)
        for (int b = 0; b <= c_.degree_y(); ++b) {
            r.at(a, b) = Rational(c_.at(a, b)) * s_;
            r.at(a, b).canonicalize();
        }
    return r;
}

ExactPoly ExactPoly::derivative(int var) const
{
    return ExactPoly(c_.derivative(var), s_);
}

ExactPoly ExactPoly::laplacian() const
{
    ExactPoly r = derivative(0).derivative(0);
    if (nvars() == 2)
        r = r + derivative(1).derivative(1);
    return r;
}

ExactPoly ExactPoly::scaled(const Rational& f) const
{
    Rational s = s_ * f;
    s.canonicalize();
    return ExactPoly(c_, s);
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b)
{
    if (a.nvars() != b.nvars())
        throw Error("shape-mismatch", "polynomials in different numbers of variables");
    const auto& p = a.c_;
    const auto& q = b.c_;
    PolySeries<BigInt> r(p.nvars(), p.degree_x() + q.degree_x(), p.degree_y() + q.degree_y());
    for (int i = 0; i <= p.degree_x(); ++i)
        for (int j = 0; j <= p.degree_y(); ++j) {
            const BigInt& pij = p.at(i, j);
            if (pij == 0)
                continue;
            for (int k = 0; k <= q.degree_x(); ++k)
                for (int l = 0; l <= q.degree_y(); ++l)
                    mpz_addmul(r.at(i + k, j + l).get_mpz_t(), pij.get_mpz_t(), q.at(k, l).get_mpz_t());
        }
    Rational s = a.s_ * b.s_;
    s.canonicalize();
    return ExactPoly(std::move(r), s);
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b)
{
    if (a.nvars() != b.nvars())
        throw Error("shape-mismatch", "polynomials in different numbers of variables");
    BigInt ma, mb;
    Rational g;
    common_scale(a.s_, b.s_, ma, mb, g);
    return ExactPoly(combine(a.c_, ma, b.c_, mb), g);
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b)
{
    return a + b.scaled(Rational(-1));
}

Rational ExactPoly::integrate() const
{
    BigInt Lx, Ly;
    const auto hx = hilbert_weights(c_.degree_x(), Lx);
    const auto hy = hilbert_weights(c_.degree_y(), Ly);
    BigInt sum = 0;
    BigInt t;
    for (int a = 0; a <= c_.degree_x(); ++a)
        for (int b = 0; b <= c_.degree_y(); ++b) {
            if (c_.at(a, b) == 0)
                continue;
            mpz_mul(t.get_mpz_t(), hx[a].get_mpz_t(), hy[b].get_mpz_t());
            mpz_addmul(sum.get_mpz_t(), c_.at(a, b).get_mpz_t(), t.get_mpz_t());
        }
    Rational r = s_ * Rational(sum, BigInt(Lx * Ly));
    r.canonicalize();
    return r;
}

Rational ExactPoly::evaluate(const Rational& x, const Rational& y) const
{
    const int A = c_.degree_x();
    const int B = c_.degree_y();
    const BigInt& nx = x.get_num();
    const BigInt& dx = x.get_den();
    const BigInt& ny = y.get_num();
    const BigInt& dy = y.get_den();
    std::vector<BigInt> dypow(static_cast<std::size_t>(B + 1));
    dypow[0] = 1;
    for (int b = 1; b <= B; ++b)
        dypow[b] = dypow[b - 1] * dy;
    std::vector<BigInt> dxpow(static_cast<std::size_t>(A + 1));
    dxpow[0] = 1;
    for (int a = 1; a <= A; ++a)
        dxpow[a] = dxpow[a - 1] * dx;

    BigInt acc = 0;
    BigInt inner, t;
    for (int a = A; a >= 0; --a) {
        inner = c_.at(a, B);
        for (int b = B - 1; b >= 0; --b) {
            inner *= ny;
            mpz_mul(t.get_mpz_t(), c_.at(a, b).get_mpz_t(), dypow[B - b].get_mpz_t());
            inner += t;
        }
        acc *= nx;
        mpz_mul(t.get_mpz_t(), inner.get_mpz_t(), dxpow[A - a].get_mpz_t());
        acc += t;
    }
    Rational r = s_ * Rational(acc, BigInt(dxpow[A] * dypow[B]));
    r.canonicalize();
    return r;
}

Rational inner(const ExactPoly& a, const ExactPoly& b)
{
    if (a.nvars() != b.nvars())
        throw Error("shape-mismatch", "polynomials in different numbers of variables");
    const auto& P = a.coeffs();
    const auto& Q = b.coeffs();
    const int ax = P.degree_x(), ay = P.degree_y();
    const int bx = Q.degree_x(), by = Q.degree_y();
    BigInt Lx, Ly;
    const auto hx = hilbert_weights(ax + bx, Lx);
    const auto hy = hilbert_weights(ay + by, Ly);

    // T[k][j] = sum_l Q_kl hy[j + l]
    std::vector<BigInt> T(static_cast<std::size_t>((bx + 1) * (ay + 1)));
    for (int k = 0; k <= bx; ++k)
        for (int j = 0; j <= ay; ++j) {
            BigInt& dst = T[static_cast<std::size_t>(k * (ay + 1) + j)];
            for (int l = 0; l <= by; ++l)
                mpz_addmul(dst.get_mpz_t(), Q.at(k, l).get_mpz_t(), hy[j + l].get_mpz_t());
        }
    // sum_ij P_ij sum_k hx[i + k] T[k][j]
    BigInt total = 0;
    BigInt S;
    for (int i = 0; i <= ax; ++i)
        for (int j = 0; j <= ay; ++j) {
            if (P.at(i, j) == 0)
                continue;
            S = 0;
            for (int k = 0; k <= bx; ++k)
                mpz_addmul(S.get_mpz_t(), hx[i + k].get_mpz_t(), T[static_cast<std::size_t>(k * (ay + 1) + j)].get_mpz_t());
            mpz_addmul(total.get_mpz_t(), P.at(i, j).get_mpz_t(), S.get_mpz_t());
        }
    Rational r = a.scale() * b.scale() * Rational(total, BigInt(Lx * Ly));
    r.canonicalize();
    return r;
}

MomentTable basis_moments(const IntegerBasis& basis, const std::vector<std::pair<int, int>>& pairs, int smax)
{
    const int M = static_cast<int>(basis.psi.size());
    BigInt L;
    const auto h = hilbert_weights(smax + 2 * (M + 1), L);
    std::map<int, std::vector<BigInt>> V; // V_a[s][j] flattened, j = 0..M+1
    const int J = M + 2;
    auto get_v = [&](int a) -> const std::vector<BigInt>& {
        auto it = V.find(a);
        if (it != V.end())
            return it->second;
        std::vector<BigInt> v(static_cast<std::size_t>((smax + 1) * J));
        const auto& psi = basis.psi[a - 1];
        for (int s = 0; s <= smax; ++s)
            for (int j = 0; j < J; ++j) {
                BigInt& dst = v[static_cast<std::size_t>(s * J + j)];
                for (std::size_t i = 0; i < psi.size(); ++i)
                    mpz_addmul(dst.get_mpz_t(), psi[i].get_mpz_t(), h[s + static_cast<int>(i) + j].get_mpz_t());
            }
        return V.emplace(a, std::move(v)).first->second;
    };
    MomentTable out;
    out.den_inv = Rational(1, BigInt(L * basis.D * basis.D));
    out.den_inv.canonicalize();
    for (const auto& [a, c] : pairs) {
        if (a < 1 || c < 1 || a > M || c > M)
            throw Error("bad-index", "moment pair outside the basis");
        const auto& va = get_v(a);
        const auto& psc = basis.psi[c - 1];
        std::vector<BigInt> row(static_cast<std::size_t>(smax + 1));
        for (int s = 0; s <= smax; ++s)
            for (std::size_t j = 0; j < psc.size(); ++j)
                mpz_addmul(row[s].get_mpz_t(), va[static_cast<std::size_t>(s * J) + j].get_mpz_t(), psc[j].get_mpz_t());
        out.m.push_back(std::move(row));
    }
    return out;
}

} // namespace henon
