#pragma once

// Verified eigenvalue bounds for the linearized problem
//   (grad v, grad w) + tau (v, w) = lambda ((tau + f'(u)) v, w)
// and the resulting bound on the inverse of the linearized operator.

#include "henon/interval.hpp"
#include "henon/legendre.hpp"
#include "henon/problem.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace henon {

// Symmetric interval matrix stored as midpoint and radius:
// entry (i,j) lies in [mid - rad, mid + rad].
struct IntervalMatrix {
    Eigen::MatrixXd mid;
    Eigen::MatrixXd rad;

    IntervalMatrix() = default;
    explicit IntervalMatrix(Eigen::Index n) : mid(Eigen::MatrixXd::Zero(n, n)), rad(Eigen::MatrixXd::Zero(n, n)) {}
    Eigen::Index size() const { return mid.rows(); }
    void set(Eigen::Index i, Eigen::Index j, const Interval& v);
    Interval at(Eigen::Index i, Eigen::Index j) const;
};

struct Pencil {
    IntervalMatrix A; // H10 form  K + tau Mass
    IntervalMatrix B; // weighted form  tau Mass + P
    SymmetrySpace space;
    // B is positive definite for analytic reasons (tau > 0 and f' >= 0).
    bool b_known_definite = false;
};

// Exact assembly on the eigen space (its tag and M) of the solution u-hat
// given in u_space.  jobs > 1 spreads the potential integrals over threads.
Pencil assemble_pencil(const ProblemSpec& spec, const SymmetrySpace& u_space, std::span<const double> u_coeffs,
                       const SymmetrySpace& eig_space, const Interval& tau, int jobs = 1);

struct EigEnclosure {
    std::vector<Interval> lambda; // ascending; hi may be +inf
    Interval tail_lower{0.0};     // lower bound for every lambda_k, k > size
};

// Intervals for the eigenvalues of A x = lambda B x.  Needs A positive
// definite (certified here, "pencil-not-definite" otherwise) and B either
// certified or flagged definite.
EigEnclosure enclose_generalized_eigs(const IntervalMatrix& A, const IntervalMatrix& B, bool b_known_definite = false);
EigEnclosure enclose_generalized_eigs(const Pencil& pencil);

// lambda_k >= s / (s CMtau^2 Wsup + 1) with s the lower end of the discrete
// enclosure; the upper ends stay (Rayleigh-Ritz).
EigEnclosure apply_lower_bound_correction(const EigEnclosure& discrete, const Interval& CMtau, const Interval& Wsup);

struct InverseNormCertificate {
    Interval mu0;
    Interval K;
    int contributing_index = 0; // 1-based lambda index, 0 for the constant 1, -1 for the tail
};

// mu0 = min |1 - 1/lambda| over the enclosure, 1 and the tail; K = 1/mu0.
// Errors: "mu0-possibly-zero", "tail-unresolved".
InverseNormCertificate inverse_norm(const EigEnclosure& enclosure);

// Lower bounds of |1 - 1/lambda| for lambda in x (0 when 1 is in x).
double mu_lower(const Interval& x);

} // namespace henon
