#include "henon/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace henon {

namespace {

// Tabulated basis on a tensor Gauss grid.
struct Grid {
    int N = 1;
    int M = 1;
    int nq = 1;
    std::vector<double> x, w;
    Eigen::MatrixXd Phi;  // nq x M
    Eigen::MatrixXd dPhi; // nq x M
    Eigen::VectorXd K1;   // (phi_i', phi_i') = 1/(2i+1)
    Eigen::MatrixXd M1;   // (phi_i, phi_j)
    Eigen::MatrixXd W;    // weight at the nodes, nq x nq (N=2) or nq x 1

    Grid(const ProblemSpec& spec, int M_, int nq_) : N(spec.N), M(M_), nq(nq_)
    {
        const auto rule = gauss_legendre(nq);
        x = rule.nodes;
        w = rule.weights;
        Phi.resize(nq, M);
        dPhi.resize(nq, M);
        std::vector<double> ph(static_cast<std::size_t>(M)), dph(static_cast<std::size_t>(M));
        for (int q = 0; q < nq; ++q) {
            phi_values(x[q], M, ph, dph);
            for (int i = 0; i < M; ++i) {
                Phi(q, i) = ph[i];
                dPhi(q, i) = dph[i];
            }
        }
        K1.resize(M);
        for (int i = 0; i < M; ++i)
            K1(i) = 1.0 / (2.0 * (i + 1) + 1.0);
        const Eigen::Map<const Eigen::VectorXd> wv(w.data(), nq);
        M1 = Phi.transpose() * wv.asDiagonal() * Phi;
        W.resize(nq, N == 2 ? nq : 1);
        for (int q = 0; q < nq; ++q)
            for (int r = 0; r < W.cols(); ++r)
                W(q, r) = weight_value(spec, x[q], N == 2 ? x[r] : 0.5);
    }
};

// Node count making the Newton system exact for polynomial nonlinearities.
int node_count(const ProblemSpec& spec, int M, int M_test)
{
    const double deg = spec.l + spec.p * (M + 1) + (M_test + 1);
    const double deg_jac = spec.l + (spec.p - 1) * (M + 1) + 2 * (M_test + 1);
    const int need = static_cast<int>(std::ceil((std::max(deg, deg_jac) + 1) / 2));
    return std::max(2 * std::max(M, M_test) + 8, need);
}

double fval(double u, double p, bool pint)
{
    if (pint) {
        double r = u;
        for (int k = 1; k < static_cast<int>(p); ++k)
            r *= u;
        return static_cast<int>(p) % 2 == 1 ? r : std::fabs(r) * (u < 0 ? -1.0 : 1.0);
    }
    return std::pow(std::fabs(u), p - 1) * u;
}

double dfval(double u, double p, bool pint)
{
    if (pint) {
        double r = 1.0;
        for (int k = 1; k < static_cast<int>(p); ++k)
            r *= u;
        return p * (static_cast<int>(p) % 2 == 1 ? r : std::fabs(r));
    }
    return p * std::pow(std::fabs(u), p - 1);
}

bool p_is_int(double p) { return std::floor(p) == p && p <= 64; }

// Full tensor of coefficients as an M x M matrix (N=2) or M-vector (N=1).
Eigen::MatrixXd tensor_matrix(const GalerkinSolution& u)
{
    const auto t = to_tensor(u.space, u.coeffs);
    const int M = u.M();
    if (u.spec.N == 1)
        return Eigen::Map<const Eigen::VectorXd>(t.data(), M);
    Eigen::MatrixXd U(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            U(i, j) = t[static_cast<std::size_t>(i * M + j)];
    return U;
}

// Solution values at the nodes.
Eigen::MatrixXd grid_values(const Grid& g, const Eigen::MatrixXd& U)
{
    if (g.N == 1)
        return g.Phi * U;
    return g.Phi * U * g.Phi.transpose();
}

Eigen::VectorXd restrict_tensor(const SymmetrySpace& space, const Eigen::MatrixXd& T)
{
    const auto idx = index_set(space);
    Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (const auto& t : tensor_terms(idx[k]))
            r(static_cast<Eigen::Index>(k)) += t.coef * (space.N == 1 ? T(t.i - 1, 0) : T(t.i - 1, t.j - 1));
    return r;
}

Eigen::MatrixXd gradient_tensor(const GalerkinSolution& u, const Grid& g)
{
    const Eigen::MatrixXd U = tensor_matrix(u);
    const Eigen::MatrixXd V = grid_values(g, U);
    const bool pint = p_is_int(u.spec.p);
    Eigen::MatrixXd F(V.rows(), V.cols());
    for (Eigen::Index q = 0; q < V.rows(); ++q)
        for (Eigen::Index r = 0; r < V.cols(); ++r) {
            const double wq = g.w[q] * (g.N == 2 ? g.w[r] : 1.0);
            F(q, r) = wq * g.W(q, r) * fval(V(q, r), u.spec.p, pint);
        }
    if (g.N == 1)
        return (g.K1.asDiagonal() * U - g.Phi.transpose() * F).eval();
    return (g.K1.asDiagonal() * U * g.M1 + g.M1 * U * g.K1.asDiagonal() - g.Phi.transpose() * F * g.Phi).eval();
}

// Weighted potential G at the nodes (quadrature weights included).
Eigen::MatrixXd potential(const GalerkinSolution& u, const Grid& g, const Eigen::MatrixXd& V)
{
    const bool pint = p_is_int(u.spec.p);
    Eigen::MatrixXd G(V.rows(), V.cols());
    for (Eigen::Index q = 0; q < V.rows(); ++q)
        for (Eigen::Index r = 0; r < V.cols(); ++r) {
            const double wq = g.w[q] * (g.N == 2 ? g.w[r] : 1.0);
            G(q, r) = wq * g.W(q, r) * dfval(V(q, r), u.spec.p, pint);
        }
    return G;
}

// H[(a,c),(b,d)] = sum_qr Phi_qa Phi_qc G_qr Phi_rb Phi_rd (index a*M+c).
Eigen::MatrixXd potential_tensor(const Grid& g, const Eigen::MatrixXd& G)
{
    const int M = g.M;
    Eigen::MatrixXd Phi2(g.nq, M * M);
    for (int a = 0; a < M; ++a)
        for (int c = 0; c < M; ++c)
            Phi2.col(a * M + c) = g.Phi.col(a).cwiseProduct(g.Phi.col(c));
    const Eigen::MatrixXd GP = G * Phi2;
    return Phi2.transpose() * GP;
}

// Operator matrices restricted to `space` on the grid `g`.  `which` selects
// stiffness (0), potential (1) or mass (2).
Eigen::MatrixXd restricted_matrix(const SymmetrySpace& space, const Grid& g, const Eigen::MatrixXd* H, int which)
{
    const auto idx = index_set(space);
    const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
    const int M = g.M;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    std::vector<std::vector<TensorTerm>> terms;
    for (const auto& b : idx)
        terms.push_back(tensor_terms(b));
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index m = k; m < n; ++m) {
            double s = 0.0;
            for (const auto& t : terms[k])
                for (const auto& r : terms[m]) {
                    const int a = t.i - 1, b = t.j - 1, c = r.i - 1, d = r.j - 1;
                    double v = 0.0;
                    if (space.N == 1) {
                        if (which == 0)
                            v = a == c ? g.K1(a) : 0.0;
                        else if (which == 1)
                            v = (*H)(a, c);
                        else
                            v = g.M1(a, c);
                    } else {
                        if (which == 0)
                            v = (a == c ? g.K1(a) * g.M1(b, d) : 0.0) + (b == d ? g.M1(a, c) * g.K1(b) : 0.0);
                        else if (which == 1)
                            v = (*H)(a * M + c, b * M + d);
                        else
                            v = g.M1(a, c) * g.M1(b, d);
                    }
                    s += t.coef * r.coef * v;
                }
            J(k, m) = s;
            J(m, k) = s;
        }
    return J;
}

Eigen::MatrixXd potential_matrix(const GalerkinSolution& u, const Grid& g, const SymmetrySpace& space, const Eigen::MatrixXd& V)
{
    const Eigen::MatrixXd G = potential(u, g, V);
    if (g.N == 1) {
        const Eigen::MatrixXd H = g.Phi.transpose() * G.col(0).asDiagonal() * g.Phi;
        return restricted_matrix(space, g, &H, 1);
    }
    const Eigen::MatrixXd H = potential_tensor(g, G);
    return restricted_matrix(space, g, &H, 1);
}

} // namespace

void GalerkinSolution::validate() const
{
    spec.validate();
    space.validate();
    if (space.N != spec.N)
        throw Error("shape-mismatch", "space dimension differs from the problem dimension");
    if (coeffs.size() != space_dimension(space))
        throw Error("shape-mismatch", "coefficient count does not match the space");
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw Error("non-finite", "solution coefficient is not finite");
}

GalerkinSolution zero_solution(const ProblemSpec& spec, const SymmetrySpace& space)
{
    GalerkinSolution s;
    s.spec = spec;
    s.space = space;
    s.coeffs.assign(space_dimension(space), 0.0);
    return s;
}

Eigen::VectorXd galerkin_gradient(const GalerkinSolution& u)
{
    u.validate();
    const Grid g(u.spec, u.M(), node_count(u.spec, u.M(), u.M()));
    return restrict_tensor(u.space, gradient_tensor(u, g));
}

NewtonSystem assemble_newton_system(const GalerkinSolution& u)
{
    u.validate();
    const Grid g(u.spec, u.M(), node_count(u.spec, u.M(), u.M()));
    NewtonSystem sys;
    sys.gradient = restrict_tensor(u.space, gradient_tensor(u, g));
    const Eigen::MatrixXd V = grid_values(g, tensor_matrix(u));
    sys.jacobian = restricted_matrix(u.space, g, nullptr, 0) - potential_matrix(u, g, u.space, V);
    return sys;
}

GalerkinSolution newton_solve(const GalerkinSolution& seed, double tol, int max_iters)
{
    seed.validate();
    GalerkinSolution u = seed;
    u.converged = false;
    u.status.clear();
    const Grid g(u.spec, u.M(), node_count(u.spec, u.M(), u.M()));
    const Eigen::MatrixXd K = restricted_matrix(u.space, g, nullptr, 0);
    auto grad = [&](const GalerkinSolution& v) { return restrict_tensor(v.space, gradient_tensor(v, g)); };
    constexpr double eps = std::numeric_limits<double>::epsilon();

    Eigen::VectorXd gr = grad(u);
    for (int it = 0; it <= max_iters; ++it) {
        u.iterations = it;
        u.gradient_norm = gr.norm();
        if (!std::isfinite(u.gradient_norm)) {
            u.status = "non-finite";
            return u;
        }
        if (u.gradient_norm <= tol) {
            u.converged = true;
            return u;
        }
        if (it == max_iters)
            break;
        const Eigen::MatrixXd V = grid_values(g, tensor_matrix(u));
        const Eigen::MatrixXd J = K - potential_matrix(u, g, u.space, V);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(J);
        if (!(lu.rcond() > 1e-15)) {
            u.status = "jacobian-singular";
            return u;
        }
        const Eigen::VectorXd step = lu.solve(-gr);
        const Eigen::Map<const Eigen::VectorXd> cur(u.coeffs.data(), static_cast<Eigen::Index>(u.coeffs.size()));
        // A step at rounding level cannot reduce the gradient further.
        if (step.norm() <= 16 * eps * std::max(cur.norm(), 1e-300)) {
            u.converged = true;
            return u;
        }
        double t = 1.0;
        GalerkinSolution trial = u;
        Eigen::VectorXd gt;
        bool accepted = false;
        for (int k = 0; k < 12; ++k, t *= 0.5) {
            for (std::size_t i = 0; i < u.coeffs.size(); ++i)
                trial.coeffs[i] = u.coeffs[i] + t * step(static_cast<Eigen::Index>(i));
            gt = grad(trial);
            if (std::isfinite(gt.norm()) && gt.norm() <= (1 - 1e-4 * t) * u.gradient_norm) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // Near the root the gradient is dominated by rounding: accept the
            // full step if it is tiny relative to u, otherwise keep the short step.
            if (step.norm() <= 1e-10 * cur.norm()) {
                for (std::size_t i = 0; i < u.coeffs.size(); ++i)
                    u.coeffs[i] += step(static_cast<Eigen::Index>(i));
                u.gradient_norm = grad(u).norm();
                u.iterations = it + 1;
                u.converged = true;
                return u;
            }
            if (!std::isfinite(gt.norm())) {
                u.status = "non-finite";
                return u;
            }
        }
        u.coeffs = trial.coeffs;
        gr = gt;
    }
    u.status = "max-iterations";
    return u;
}

std::vector<SeedPeak> seed_preset(const std::string& name, int N)
{
    if (N == 1) {
        if (name == "center")
            return {{{0.5}, 0.0, 0.0}};
        if (name == "left")
            return {{{0.25}, 0.0, 0.0}};
        if (name == "right")
            return {{{0.75}, 0.0, 0.0}};
        if (name == "two")
            return {{{0.25}, 0.0, 0.0}, {{0.75}, 0.0, 0.0}};
    } else if (N == 2) {
        const double a = 0.25, b = 0.75;
        if (name == "center")
            return {{{0.5, 0.5}, 0.0, 0.0}};
        if (name == "corner")
            return {{{a, a}, 0.0, 0.0}};
        if (name == "two-side")
            return {{{a, a}, 0.0, 0.0}, {{b, a}, 0.0, 0.0}};
        if (name == "two-diagonal")
            return {{{a, a}, 0.0, 0.0}, {{b, b}, 0.0, 0.0}};
        if (name == "three")
            return {{{a, a}, 0.0, 0.0}, {{b, a}, 0.0, 0.0}, {{a, b}, 0.0, 0.0}};
        if (name == "four")
            return {{{a, a}, 0.0, 0.0}, {{b, a}, 0.0, 0.0}, {{a, b}, 0.0, 0.0}, {{b, b}, 0.0, 0.0}};
    }
    throw Error("unknown-preset", "no seed preset named '" + name + "'");
}

std::vector<std::string> seed_preset_names(int N)
{
    if (N == 1)
        return {"center", "left", "right", "two"};
    return {"center", "corner", "two-side", "two-diagonal", "three", "four"};
}

GalerkinSolution make_seed(const ProblemSpec& spec, const SymmetrySpace& space, const std::vector<SeedPeak>& peaks,
                           double nehari_fraction)
{
    spec.validate();
    space.validate();
    GalerkinSolution s = zero_solution(spec, space);
    if (peaks.empty())
        return s;
    for (const auto& pk : peaks) {
        if (static_cast<int>(pk.center.size()) != spec.N)
            throw Error("bad-seed", "peak centre has the wrong dimension");
        for (double c : pk.center)
            if (!(c > 0.0 && c < 1.0))
                throw Error("seed-outside-domain", "peak centre must lie strictly inside the domain");
    }
    // radius: half the distance to the nearest other peak, capped by the walls
    std::vector<double> radius;
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        double r = peaks[i].radius;
        if (r <= 0) {
            r = 0.5;
            for (double c : peaks[i].center)
                r = std::min({r, c, 1 - c});
            for (std::size_t j = 0; j < peaks.size(); ++j) {
                if (j == i)
                    continue;
                double d = 0;
                for (int k = 0; k < spec.N; ++k)
                    d = std::max(d, std::fabs(peaks[i].center[k] - peaks[j].center[k]));
                r = std::min(r, 0.5 * d);
            }
        }
        radius.push_back(r);
    }
    const bool autoscale = std::all_of(peaks.begin(), peaks.end(), [](const SeedPeak& p) { return p.amplitude == 0.0; });
    const int M = space.M;
    const int nq = std::max(2 * M + 8, 160);
    const Grid g(spec, M, nq);
    auto bump1 = [](double x, double c, double r) {
        const double t = (x - c) / r;
        if (std::fabs(t) >= 1)
            return 0.0;
        const double s = std::cos(0.5 * std::numbers::pi * t);
        return s * s;
    };
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nq, spec.N == 2 ? nq : 1);
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        const double amp = autoscale ? 1.0 : peaks[i].amplitude;
        for (int q = 0; q < nq; ++q)
            for (Eigen::Index r = 0; r < B.cols(); ++r) {
                double v = amp * bump1(g.x[q], peaks[i].center[0], radius[i]);
                if (spec.N == 2)
                    v *= bump1(g.x[r], peaks[i].center[1], radius[i]);
                B(q, r) += v;
            }
    }
    // L2 projection onto the space.
    Eigen::MatrixXd R(nq, B.cols());
    for (int q = 0; q < nq; ++q)
        for (Eigen::Index r = 0; r < B.cols(); ++r)
            R(q, r) = g.w[q] * (spec.N == 2 ? g.w[r] : 1.0) * B(q, r);
    const Eigen::MatrixXd rhs_t = spec.N == 1 ? Eigen::MatrixXd(g.Phi.transpose() * R) : Eigen::MatrixXd(g.Phi.transpose() * R * g.Phi);
    const Eigen::VectorXd rhs = restrict_tensor(space, rhs_t);
    const Eigen::MatrixXd Mass = restricted_matrix(space, g, nullptr, 2);
    const Eigen::VectorXd c = Mass.ldlt().solve(rhs);
    s.coeffs.assign(c.data(), c.data() + c.size());
    if (autoscale) {
        // t^{p-1} = |grad v|^2 / int w |v|^{p+1}
        const Eigen::MatrixXd K = restricted_matrix(space, g, nullptr, 0);
        const double num = c.dot(K * c);
        const Eigen::MatrixXd V = grid_values(g, tensor_matrix(s));
        double den = 0;
        for (Eigen::Index q = 0; q < V.rows(); ++q)
            for (Eigen::Index r = 0; r < V.cols(); ++r)
                den += g.w[q] * (spec.N == 2 ? g.w[r] : 1.0) * g.W(q, r) * std::pow(std::fabs(V(q, r)), spec.p + 1);
        if (den > 0) {
            const double t = nehari_fraction * std::pow(num / den, 1.0 / (spec.p - 1));
            for (auto& v : s.coeffs)
                v *= t;
        }
    }
    return s;
}

GalerkinSolution solve_from_peaks(const ProblemSpec& spec, const SymmetrySpace& space, const std::vector<SeedPeak>& peaks,
                                  double tol, int max_iters)
{
    GalerkinSolution last;
    for (double f : {0.7, 0.6, 0.8, 0.5, 0.9, 1.0}) {
        last = newton_solve(make_seed(spec, space, peaks, f), tol, max_iters);
        if (last.converged && approx_h10_norm(last) > 1e-8)
            return last;
    }
    if (last.converged)
        last.status = "collapsed-to-zero";
    last.converged = false;
    return last;
}

double evaluate_solution(const GalerkinSolution& u, double x, double y)
{
    const int M = u.M();
    std::vector<double> px(static_cast<std::size_t>(M)), dx(static_cast<std::size_t>(M));
    phi_values(x, M, px, dx);
    const auto t = to_tensor(u.space, u.coeffs);
    if (u.spec.N == 1) {
        double s = 0;
        for (int i = 0; i < M; ++i)
            s += t[i] * px[i];
        return s;
    }
    std::vector<double> py(static_cast<std::size_t>(M)), dy(static_cast<std::size_t>(M));
    phi_values(y, M, py, dy);
    double s = 0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            s += t[static_cast<std::size_t>(i * M + j)] * px[i] * py[j];
    return s;
}

double approx_peak(const GalerkinSolution& u)
{
    const int M = u.M();
    const Eigen::MatrixXd U = tensor_matrix(u);
    // coarse grid, then zoom around the best node
    const int n = u.spec.N == 1 ? 2001 : 257;
    auto table = [&](double lo, double hi) {
        Eigen::MatrixXd P(n, M);
        std::vector<double> ph(static_cast<std::size_t>(M)), dph(static_cast<std::size_t>(M));
        for (int q = 0; q < n; ++q) {
            phi_values(std::clamp(lo + (hi - lo) * q / (n - 1), 0.0, 1.0), M, ph, dph);
            for (int i = 0; i < M; ++i)
                P(q, i) = ph[i];
        }
        return P;
    };
    double bx0 = 0, bx1 = 1, by0 = 0, by1 = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (int round = 0; round < 4; ++round) {
        const Eigen::MatrixXd Px = table(bx0, bx1);
        int bi = 0, bj = 0;
        if (u.spec.N == 1) {
            const Eigen::VectorXd v = Px * U;
            Eigen::Index k;
            best = std::max(best, v.maxCoeff(&k));
            bi = static_cast<int>(k);
        } else {
            const Eigen::MatrixXd Py = table(by0, by1);
            const Eigen::MatrixXd V = Px * U * Py.transpose();
            Eigen::Index i, j;
            best = std::max(best, V.maxCoeff(&i, &j));
            bi = static_cast<int>(i);
            bj = static_cast<int>(j);
        }
        const double hx = (bx1 - bx0) / (n - 1), hy = (by1 - by0) / (n - 1);
        const double cx = bx0 + bi * hx, cy = by0 + bj * hy;
        bx0 = cx - 2 * hx;
        bx1 = cx + 2 * hx;
        by0 = cy - 2 * hy;
        by1 = cy + 2 * hy;
    }
    return best;
}

double approx_h10_norm(const GalerkinSolution& u)
{
    const Grid g(u.spec, u.M(), u.M() + 2);
    const Eigen::MatrixXd K = restricted_matrix(u.space, g, nullptr, 0);
    const Eigen::Map<const Eigen::VectorXd> c(u.coeffs.data(), static_cast<Eigen::Index>(u.coeffs.size()));
    return std::sqrt(std::max(0.0, c.dot(K * c)));
}

int stabilizer_order(const GalerkinSolution& u, double tol)
{
    const Eigen::MatrixXd U = tensor_matrix(u);
    const double nrm = U.norm();
    if (nrm == 0.0)
        return u.spec.N == 1 ? 2 : 8;
    const int M = u.M();
    auto sign = [](int i) { return i % 2 == 0 ? 1.0 : -1.0; }; // phi_{i+1}(1-x) = (-1)^i phi_{i+1}(x)
    if (u.spec.N == 1) {
        Eigen::VectorXd R(M);
        for (int i = 0; i < M; ++i)
            R(i) = sign(i) * U(i, 0);
        return (R - U).norm() <= tol * nrm ? 2 : 1;
    }
    int count = 0;
    // the dihedral group of the square: optional transpose, then reflections in x and y
    for (int tr = 0; tr < 2; ++tr)
        for (int sx = 0; sx < 2; ++sx)
            for (int sy = 0; sy < 2; ++sy) {
                Eigen::MatrixXd G(M, M);
                for (int i = 0; i < M; ++i)
                    for (int j = 0; j < M; ++j) {
                        const double v = tr ? U(j, i) : U(i, j);
                        G(i, j) = v * (sx ? sign(i) : 1.0) * (sy ? sign(j) : 1.0);
                    }
                if ((G - U).norm() <= tol * nrm)
                    ++count;
            }
    return count;
}

GalerkinSolution embed_solution(const GalerkinSolution& u, const SymmetrySpace& target)
{
    if (target.N != u.spec.N)
        throw Error("shape-mismatch", "target space has a different dimension");
    if (target.M < u.M())
        throw Error("shape-mismatch", "target space is smaller than the source");
    const auto t = to_tensor(u.space, u.coeffs);
    const int M = u.M();
    auto at = [&](int i, int j) -> double {
        if (i > M || (u.spec.N == 2 && j > M))
            return 0.0;
        return u.spec.N == 1 ? t[static_cast<std::size_t>(i - 1)] : t[static_cast<std::size_t>((i - 1) * M + (j - 1))];
    };
    GalerkinSolution r = u;
    r.space = target;
    r.coeffs.clear();
    for (const auto& b : index_set(target)) {
        if (!b.psi)
            r.coeffs.push_back(at(b.i, b.j));
        else
            r.coeffs.push_back(b.i == b.j ? 0.5 * at(b.i, b.i) : at(b.i, b.j));
    }
    const auto back = to_tensor(target, r.coeffs);
    const int Mt = target.M;
    for (int i = 1; i <= Mt; ++i)
        for (int j = 1; j <= (u.spec.N == 2 ? Mt : 1); ++j) {
            const double want = u.spec.N == 1 ? at(i, 0) : at(i, j);
            const double got = u.spec.N == 1 ? back[static_cast<std::size_t>(i - 1)] : back[static_cast<std::size_t>((i - 1) * Mt + (j - 1))];
            if (want != got)
                throw Error("not-in-space", "solution does not lie in the target space");
        }
    return r;
}

CurveResult trace_curve(const GalerkinSolution& seed, double l_end, double l_step, bool stop_on_any_gain)
{
    if (!(l_step > 0))
        throw Error("bad-step", "l_step must be positive");
    CurveResult out;
    const double l0 = seed.spec.l;
    const double dir = l_end >= l0 ? 1.0 : -1.0;
    const long count = static_cast<long>(std::floor(std::fabs(l_end - l0) / l_step + 1e-9)) + 1;
    GalerkinSolution cur = seed;
    int base_symmetry = -1;
    const int full_order = seed.spec.N == 2 ? 8 : 2;
    for (long k = 0; k < count; ++k) {
        const double l = l0 + dir * static_cast<double>(k) * l_step;
        GalerkinSolution trial = cur;
        trial.spec.l = std::max(0.0, std::round(l * 1e9) / 1e9);
        GalerkinSolution sol = newton_solve(trial);
        CurvePoint pt;
        pt.l = trial.spec.l;
        pt.branch_id = seed.branch_id;
        pt.newton_iters = sol.iterations;
        pt.converged = sol.converged;
        if (sol.converged) {
            pt.h10_norm = approx_h10_norm(sol);
            pt.peak = approx_peak(sol);
            const int sym = stabilizer_order(sol);
            pt.symmetry_order = sym;
            const bool trivial = pt.h10_norm == 0.0;
            if (base_symmetry < 0)
                base_symmetry = sym;
            if (trivial && k > 0) {
                out.stop_reason = "collapsed-to-zero";
                return out;
            }
            if (sym > base_symmetry && (stop_on_any_gain || sym == full_order)) {
                out.stop_reason = "merged-into-symmetric-branch";
                return out;
            }
        }
        out.points.push_back(pt);
        if (!sol.converged) {
            out.stop_reason = "newton-failed:" + sol.status;
            return out;
        }
        out.solutions.push_back(sol);
        cur = sol;
    }
    return out;
}

std::vector<double> approx_eigs(const GalerkinSolution& u, int k, int M_diag, double tau, SpaceTag space)
{
    u.validate();
    if (k < 1)
        throw Error("bad-count", "k must be positive");
    const int N = u.spec.N;
    const int Mu = u.M();
    const int nq = node_count(u.spec, Mu, M_diag);
    const Grid gu(u.spec, Mu, nq);
    const Grid gd(u.spec, M_diag, nq);
    const Eigen::MatrixXd V = grid_values(gu, tensor_matrix(u));
    const SymmetrySpace full{space, N, M_diag};
    full.validate();
    const Eigen::MatrixXd K = restricted_matrix(full, gd, nullptr, 0);
    const Eigen::MatrixXd Ms = restricted_matrix(full, gd, nullptr, 2);
    const Eigen::MatrixXd P = potential_matrix(u, gd, full, V);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K - P, K + tau * Ms, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw Error("eigensolver-failed", "generalized eigensolver did not converge");
    std::vector<double> mu(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(mu.begin(), mu.end());
    if (static_cast<int>(mu.size()) > k)
        mu.resize(static_cast<std::size_t>(k));
    return mu;
}

} // namespace henon
