#include "henon/eigen_enclosure.hpp"

#include "henon/exact_poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace henon {

void IntervalMatrix::set(Eigen::Index i, Eigen::Index j, const Interval& v)
{
    const double m = v.mid();
    const double r = std::max(rnd::sub_up(v.hi(), m), rnd::sub_up(m, v.lo()));
    mid(i, j) = m;
    rad(i, j) = r;
}

Interval IntervalMatrix::at(Eigen::Index i, Eigen::Index j) const
{
    return Interval(rnd::sub_down(mid(i, j), rad(i, j)), rnd::add_up(mid(i, j), rad(i, j)));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x = m * 2^e with m an interval inside [0.25, 1] in magnitude.
struct Split {
    Interval m;
    long e = 0;
};

Split split(const BigInt& v)
{
    if (v == 0)
        return {Interval(0.0), 0};
    long e = 0;
    const double d = mpz_get_d_2exp(&e, v.get_mpz_t()); // truncated toward zero
    if (d > 0)
        return {Interval(d, rnd::next_up(d)), e};
    return {Interval(rnd::next_down(d), d), e};
}

Interval ldexp_iv(const Interval& m, long e)
{
    if (e > 1100)
        throw Error("overflow", "pencil entry out of range");
    if (e < -1200)
        return Interval(std::min(0.0, m.lo()) < 0 ? -std::numeric_limits<double>::denorm_min() : 0.0,
                        m.hi() > 0 ? std::numeric_limits<double>::denorm_min() : 0.0);
    double lo = std::ldexp(m.lo(), static_cast<int>(e));
    double hi = std::ldexp(m.hi(), static_cast<int>(e));
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw Error("overflow", "pencil entry out of range");
    if (std::fabs(lo) < 0x1p-1021 || std::fabs(hi) < 0x1p-1021) {
        lo = rnd::next_down(lo);
        hi = rnd::next_up(hi);
    }
    return Interval(lo, hi);
}

// Enclosure of a rational scale as mantissa interval and exponent.
Split split(const Rational& q)
{
    Split n = split(BigInt(q.get_num()));
    Split d = split(BigInt(q.get_den()));
    return {n.m / d.m, n.e - d.e};
}

Interval scaled(const BigInt& v, const Split& s)
{
    if (v == 0 || s.m == Interval(0.0))
        return Interval(0.0);
    Split a = split(v);
    return ldexp_iv(a.m * s.m, a.e + s.e);
}

int pair_key(int a, int b, int M) { return a <= b ? (a - 1) * M + (b - 1) : (b - 1) * M + (a - 1); }

template <class F>
void parallel_for(std::size_t n, int jobs, F&& f)
{
    const std::size_t T = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
    if (T == 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < T; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += T)
                f(i);
        });
    for (auto& th : pool)
        th.join();
}

ExactPoly potential(const ProblemSpec& spec, const SymmetrySpace& u_space, std::span<const double> u_coeffs)
{
    ExactPoly u = ExactPoly::from_solution(u_space, u_coeffs);
    ExactPoly g = ExactPoly::from_rational(weight_poly(spec));
    for (int k = 0; k < spec.p_int() - 1; ++k)
        g = g * u;
    return g.scaled(Rational(spec.p_int()));
}

} // namespace

Pencil assemble_pencil(const ProblemSpec& spec, const SymmetrySpace& u_space, std::span<const double> u_coeffs,
                       const SymmetrySpace& eig_space, const Interval& tau, int jobs)
{
    spec.validate();
    if (!spec.verified_eligible())
        throw Error("unsupported-in-verified-mode", "pencil assembly needs even integer l and odd integer p");
    u_space.validate();
    eig_space.validate();
    if (u_space.N != spec.N || eig_space.N != spec.N)
        throw Error("shape-mismatch", "space dimension differs from the problem");
    if (u_coeffs.size() != space_dimension(u_space))
        throw Error("shape-mismatch", "coefficient vector has the wrong length");
    if (!(tau.lo() >= 0))
        throw Error("invalid-tau", "tau must be nonnegative");

    const int N = spec.N;
    const int M = eig_space.M;
    const auto idx = index_set(eig_space);
    const auto n = static_cast<Eigen::Index>(idx.size());
    std::vector<std::vector<TensorTerm>> terms;
    for (const auto& b : idx)
        terms.push_back(tensor_terms(b));

    const ExactPoly G = potential(spec, u_space, u_coeffs);
    const int smax = std::max(G.degree_x(), G.degree_y());

    // 1D index pairs touched by the eigen space
    std::vector<char> used(static_cast<std::size_t>(M + 1), 0);
    for (const auto& t : terms)
        for (const auto& tt : t) {
            used[static_cast<std::size_t>(tt.i)] = 1;
            if (N == 2)
                used[static_cast<std::size_t>(tt.j)] = 1;
        }
    std::vector<std::pair<int, int>> pairs;
    std::map<int, int> pair_pos;
    for (int a = 1; a <= M; ++a)
        for (int b = a; b <= M; ++b)
            if (used[static_cast<std::size_t>(a)] && used[static_cast<std::size_t>(b)]) {
                pair_pos[pair_key(a, b, M)] = static_cast<int>(pairs.size());
                pairs.emplace_back(a, b);
            }
    const IntegerBasis basis = integer_basis(M);
    const MomentTable mt = basis_moments(basis, pairs, smax);
    const auto P1 = pairs.size();
    auto pos = [&](int a, int b) { return static_cast<std::size_t>(pair_pos.at(pair_key(a, b, M))); };

    // 1D mass and stiffness, exact
    auto mass1 = [&](int a, int b) -> Rational {
        Rational r = Rational(mt.m[pos(a, b)][0]) * mt.den_inv;
        r.canonicalize();
        return r;
    };
    auto stiff1 = [](int a, int b) -> Rational { return a == b ? Rational(1, 2 * a + 1) : Rational(0); };

    // Potential integrals: 1D directly, 2D through R[a][t] = sum_s m_a(s) G_st and T = R m^T.
    const auto& Gc = G.coeffs();
    std::vector<BigInt> T;
    Split sigma;
    if (N == 1) {
        T.resize(P1);
        parallel_for(P1, jobs, [&](std::size_t a) {
            for (int s = 0; s <= G.degree_x(); ++s)
                mpz_addmul(T[a].get_mpz_t(), mt.m[a][static_cast<std::size_t>(s)].get_mpz_t(), Gc.at(s).get_mpz_t());
        });
        sigma = split(Rational(G.scale() * mt.den_inv));
    } else {
        std::vector<BigInt> R(P1 * static_cast<std::size_t>(G.degree_y() + 1));
        const auto Ty = static_cast<std::size_t>(G.degree_y() + 1);
        parallel_for(P1, jobs, [&](std::size_t a) {
            for (int s = 0; s <= G.degree_x(); ++s)
                for (int t = 0; t <= G.degree_y(); ++t)
                    if (Gc.at(s, t) != 0)
                        mpz_addmul(R[a * Ty + static_cast<std::size_t>(t)].get_mpz_t(), mt.m[a][static_cast<std::size_t>(s)].get_mpz_t(),
                                   Gc.at(s, t).get_mpz_t());
        });
        T.resize(P1 * P1);
        parallel_for(P1, jobs, [&](std::size_t a) {
            for (std::size_t b = 0; b < P1; ++b) {
                BigInt& dst = T[a * P1 + b];
                for (std::size_t t = 0; t < Ty; ++t)
                    mpz_addmul(dst.get_mpz_t(), R[a * Ty + t].get_mpz_t(), mt.m[b][t].get_mpz_t());
            }
        });
        sigma = split(Rational(G.scale() * mt.den_inv * mt.den_inv));
    }

    Pencil out;
    out.space = eig_space;
    out.A = IntervalMatrix(n);
    out.B = IntervalMatrix(n);
    out.b_known_definite = spec.p_int() % 2 == 1 && tau.lo() > 0;

    parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t kk) {
        const auto k = static_cast<Eigen::Index>(kk);
        for (Eigen::Index m = k; m < n; ++m) {
            Rational Kr(0), Mr(0);
            BigInt Pz(0);
            for (const auto& t1 : terms[static_cast<std::size_t>(k)])
                for (const auto& t2 : terms[static_cast<std::size_t>(m)]) {
                    const long c = std::lround(t1.coef * t2.coef);
                    if (N == 1) {
                        if (std::abs(t1.i - t2.i) <= 2) {
                            Mr += c * mass1(t1.i, t2.i);
                            Kr += c * stiff1(t1.i, t2.i);
                        }
                        Pz += c * T[pos(t1.i, t2.i)];
                    } else {
                        if (std::abs(t1.i - t2.i) <= 2 && std::abs(t1.j - t2.j) <= 2) {
                            const Rational mx = mass1(t1.i, t2.i), my = mass1(t1.j, t2.j);
                            Mr += c * mx * my;
                            Kr += c * (stiff1(t1.i, t2.i) * my + mx * stiff1(t1.j, t2.j));
                        }
                        Pz += c * T[pos(t1.i, t2.i) * P1 + pos(t1.j, t2.j)];
                    }
                }
            const Interval mass = enclose(Mr);
            const Interval a = enclose(Kr) + tau * mass;
            const Interval b = tau * mass + scaled(Pz, sigma);
            out.A.set(k, m, a);
            out.B.set(k, m, b);
            if (m != k) {
                out.A.mid(m, k) = out.A.mid(k, m);
                out.A.rad(m, k) = out.A.rad(k, m);
                out.B.mid(m, k) = out.B.mid(k, m);
                out.B.rad(m, k) = out.B.rad(k, m);
            }
        }
    });
    return out;
}

namespace {

// Upper bound of the error of fl(X^T fl(M X)) against X^T M X for every
// matrix in [Mmid - Mrad, Mmid + Mrad], entrywise; returns the float product.
Eigen::MatrixXd congruence(const Eigen::MatrixXd& X, const IntervalMatrix& Mx, Eigen::MatrixXd& err)
{
    const auto n = X.rows();
    const double u = 0x1p-53;
    const double g = (n + 2) * u / (1 - (n + 2) * u);
    const Eigen::MatrixXd Y = Mx.mid * X;
    Eigen::MatrixXd Z = X.transpose() * Y;
    const Eigen::MatrixXd aX = X.cwiseAbs();
    const Eigen::MatrixXd t1 = aX.transpose() * Y.cwiseAbs();
    const Eigen::MatrixXd t2 = aX.transpose() * (Mx.mid.cwiseAbs() * aX);
    const Eigen::MatrixXd t3 = aX.transpose() * (Mx.rad * aX);
    err = ((g * (t1 + t2) + t3) * (1 + 4 * g)).array() + 1e-290;
    return Z;
}

void merge_clusters(std::vector<Interval>& v)
{
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        double hi = v[i].hi();
        while (j + 1 < v.size() && v[j + 1].lo() <= hi) {
            ++j;
            hi = std::max(hi, v[j].hi());
        }
        if (j > i) {
            const double lo = v[i].lo();
            for (std::size_t k = i; k <= j; ++k)
                v[k] = hi == kInf ? Interval::unbounded_above(lo) : Interval(lo, hi);
        }
        i = j + 1;
    }
}

} // namespace

EigEnclosure enclose_generalized_eigs(const IntervalMatrix& A, const IntervalMatrix& B, bool b_known_definite)
{
    const auto n = A.size();
    if (n == 0 || B.size() != n)
        throw Error("shape-mismatch", "pencil matrices differ in size");

    // B x = nu A x, nu = 1 / lambda
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(B.mid, A.mid);
    if (ges.info() != Eigen::Success)
        throw Error("pencil-not-definite", "floating Cholesky of A failed");
    const Eigen::MatrixXd& X = ges.eigenvectors();

    Eigen::MatrixXd EG, EA;
    const Eigen::MatrixXd G = congruence(X, A, EG);
    const Eigen::MatrixXd H = congruence(X, B, EA);

    double eps = 0, r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double sg = 0, sa = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double dg = i == j ? std::fabs(rnd::sub_up(G(i, j), 1.0)) : std::fabs(G(i, j));
            const double dg2 = i == j ? std::fabs(rnd::sub_down(G(i, j), 1.0)) : dg;
            sg = rnd::add_up(sg, rnd::add_up(std::max(dg, dg2), EG(i, j)));
            sa = rnd::add_up(sa, i == j ? EA(i, j) : rnd::add_up(std::fabs(H(i, j)), EA(i, j)));
        }
        eps = std::max(eps, sg);
        r = std::max(r, sa);
    }
    if (!(eps < 1))
        throw Error("pencil-not-definite", "A could not be certified positive definite");

    std::vector<double> d(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        d[static_cast<std::size_t>(i)] = H(i, i);
    std::sort(d.begin(), d.end(), std::greater<>());
    const Interval theta(rnd::div_down(1.0, rnd::add_up(1.0, eps)), rnd::div_up(1.0, rnd::sub_down(1.0, eps)));

    EigEnclosure out;
    for (double dk : d) {
        const Interval nu = theta * Interval(rnd::sub_down(dk, r), rnd::add_up(dk, r));
        if (nu.lo() <= 0 && !b_known_definite)
            throw Error("pencil-not-definite", "B could not be certified positive definite");
        if (nu.hi() <= 0)
            out.lambda.push_back(Interval::unbounded_above(0.0));
        else if (nu.lo() <= 0)
            out.lambda.push_back(Interval::unbounded_above(rnd::div_down(1.0, nu.hi())));
        else
            out.lambda.emplace_back(rnd::div_down(1.0, nu.hi()), rnd::div_up(1.0, nu.lo()));
    }
    merge_clusters(out.lambda);
    out.tail_lower = Interval(out.lambda.back().lo());
    return out;
}

EigEnclosure enclose_generalized_eigs(const Pencil& pencil)
{
    return enclose_generalized_eigs(pencil.A, pencil.B, pencil.b_known_definite);
}

EigEnclosure apply_lower_bound_correction(const EigEnclosure& discrete, const Interval& CMtau, const Interval& Wsup)
{
    const double c = rnd::mul_up(rnd::mul_up(CMtau.hi(), CMtau.hi()), Wsup.hi());
    EigEnclosure out;
    for (const auto& x : discrete.lambda) {
        const double s = x.lo();
        double lo = 0;
        if (s > 0)
            lo = rnd::div_down(1.0, rnd::add_up(c, rnd::div_up(1.0, s)));
        lo = std::min(lo, s);
        out.lambda.push_back(x.hi() == kInf ? Interval::unbounded_above(lo) : Interval(lo, x.hi()));
    }
    merge_clusters(out.lambda);
    out.tail_lower = out.lambda.empty() ? Interval(0.0) : Interval(out.lambda.back().lo());
    return out;
}

double mu_lower(const Interval& x)
{
    if (x.lo() > 1)
        return rnd::sub_down(1.0, rnd::div_up(1.0, x.lo()));
    if (x.hi() < 1) {
        if (x.hi() <= 0)
            return 0.0; // not a valid eigenvalue bound
        return rnd::sub_down(rnd::div_down(1.0, x.hi()), 1.0);
    }
    return 0.0;
}

InverseNormCertificate inverse_norm(const EigEnclosure& enclosure)
{
    double best = 1.0;
    int where = 0;
    for (std::size_t k = 0; k < enclosure.lambda.size(); ++k) {
        const auto& x = enclosure.lambda[k];
        if (x.contains(1.0) || x.lo() <= 0)
            throw Error("mu0-possibly-zero", "eigenvalue interval " + std::to_string(k + 1) + " contains 1");
        const double m = mu_lower(x);
        if (m < best) {
            best = m;
            where = static_cast<int>(k) + 1;
        }
    }
    if (!(enclosure.tail_lower.lo() > 1))
        throw Error("tail-unresolved", "lower bound for the truncated eigenvalues does not exceed 1");
    const double tail = mu_lower(Interval(enclosure.tail_lower.lo()));
    if (tail < best) {
        best = tail;
        where = -1;
    }
    if (!(best > 0))
        throw Error("mu0-possibly-zero", "mu0 not bounded away from 0");
    InverseNormCertificate c;
    c.mu0 = Interval(best);
    c.K = Interval(rnd::div_up(1.0, best));
    c.contributing_index = where;
    return c;
}

} // namespace henon
