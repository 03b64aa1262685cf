#pragma once

// Floating-point Galerkin solver for  -Lap u = w |u|^{p-1} u  in a symmetry
// space spanned by the Legendre basis, seeds, continuation in l, and the
// approximate linearized eigenvalues used as diagnostics.

#include "henon/legendre.hpp"
#include "henon/problem.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace henon {

struct GalerkinSolution {
    ProblemSpec spec;
    SymmetrySpace space;
    std::vector<double> coeffs; // ordered as index_set(space)
    std::string branch_id;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;
    std::string status; // empty, "max-iterations", "jacobian-singular", "non-finite"

    int M() const { return space.M; }
    void validate() const;
};

GalerkinSolution zero_solution(const ProblemSpec& spec, const SymmetrySpace& space);

struct NewtonSystem {
    Eigen::VectorXd gradient;
    Eigen::MatrixXd jacobian;
};

// gradient_k = (grad u, grad b_k) - (f(u), b_k),
// jacobian_km = (grad b_m, grad b_k) - (f'(u) b_m, b_k).
NewtonSystem assemble_newton_system(const GalerkinSolution& u);
Eigen::VectorXd galerkin_gradient(const GalerkinSolution& u);

GalerkinSolution newton_solve(const GalerkinSolution& seed, double tol = 1e-13, int max_iters = 50);

// A smooth bump of the given amplitude centred at `center`; radius 0 picks the
// largest radius that stays inside the domain and clear of the other bumps.
// Amplitude 0 rescales the whole seed to nehari_fraction times its Nehari
// scaling; cos^2 bumps are flatter than the true peaks, so the full Nehari
// amplitude tends to overshoot.
struct SeedPeak {
    std::vector<double> center;
    double amplitude = 0.0;
    double radius = 0.0;
};

GalerkinSolution make_seed(const ProblemSpec& spec, const SymmetrySpace& space, const std::vector<SeedPeak>& peaks,
                           double nehari_fraction = 0.7);
// make_seed + newton_solve, retrying a few seed amplitudes until Newton
// converges to a nonzero solution.  Returns the last attempt otherwise.
GalerkinSolution solve_from_peaks(const ProblemSpec& spec, const SymmetrySpace& space, const std::vector<SeedPeak>& peaks,
                                  double tol = 1e-13, int max_iters = 60);
// Named peak layouts ("center", "corner", "two-side", ...); "unknown-preset" on a bad name.
std::vector<SeedPeak> seed_preset(const std::string& name, int N);
std::vector<std::string> seed_preset_names(int N);

struct CurvePoint {
    double l = 0.0;
    std::string branch_id;
    double h10_norm = 0.0;
    double peak = 0.0;
    int newton_iters = 0;
    int symmetry_order = 0;
    bool converged = false;
};

struct CurveResult {
    std::vector<CurvePoint> points;
    std::vector<GalerkinSolution> solutions; // one per converged point
    std::string stop_reason;                 // empty when the branch reached l_end
};

// Natural continuation from the seed's l towards l_end (either direction) with
// |step| = l_step.  A branch stops on Newton failure, on collapse to zero, or
// when it lands on a fully symmetric solution (order 8 on the square, 2 on the
// segment) having started with less.  With stop_on_any_gain any increase of
// the symmetry order ends it.
CurveResult trace_curve(const GalerkinSolution& seed, double l_end, double l_step, bool stop_on_any_gain = false);

// Smallest k eigenvalues mu of  (K - P) x = mu (K + tau Mass) x  on V_{M_diag}
// (unrestricted by default), P_km = (f'(u) b_m, b_k).
std::vector<double> approx_eigs(const GalerkinSolution& u, int k, int M_diag, double tau = 4.9406564584124654e-324,
                                SpaceTag space = SpaceTag::Full);

// Diagnostics in floating point.
double approx_peak(const GalerkinSolution& u);
double approx_h10_norm(const GalerkinSolution& u);
double evaluate_solution(const GalerkinSolution& u, double x, double y = 0.5);

// Number of symmetries of the square (or of the segment) fixing u up to a
// relative coefficient defect of tol.  The identity always counts.
int stabilizer_order(const GalerkinSolution& u, double tol = 1e-6);

// Solution re-expressed in a larger space containing it (e.g. V4 -> Full).
GalerkinSolution embed_solution(const GalerkinSolution& u, const SymmetrySpace& target);

} // namespace henon
