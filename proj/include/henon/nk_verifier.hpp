#pragma once

// Newton-Kantorovich certificate for a Galerkin approximation u-hat and the
// full verification pipeline built on the constants and eigenvalue modules.

#include "henon/constants.hpp"
#include "henon/eigen_enclosure.hpp"
#include "henon/galerkin.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace henon {

struct SolutionNorms {
    Interval h10;  // (||grad u||^2 + tau ||u||^2)^(1/2)
    Interval lp1;  // ||u||_{L^{p+1}}
    Interval peak; // [sampled max, rigorous upper bound] of u over the box
    bool peak_warning = false;
};

SolutionNorms rigorous_norms(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                             const Interval& tau);

// C2 ||Lap u + w u^p||_{L^2}; the square norm is an exact integral.
Interval residual_norm(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                       const Interval& C2);

// p (p-1) d Cp1^3 (||u||_{L^{p+1}} + Cp1 r)^(p-2)
Interval lipschitz_L(double p, const Interval& Cp1, const Interval& d, const Interval& lp1_norm, const Interval& r);

struct NKCertificate {
    Interval residual;
    Interval K;
    Interval L;
    Interval alpha;
    Interval beta;
    double delta = 0;
    Interval rho;
    Interval unique_radius;
    Interval rA;
    Interval rR;
    Interval peak;
    bool proven = false;
    std::string reason; // empty when proven
};

// delta = max(1e-15, 1e-6 alpha)
double delta_policy(double alpha);

// L_of_r maps the radius r = 2 alpha + delta to the Lipschitz bound on B(u, r).
NKCertificate certify(const Interval& residual, const Interval& K, const std::function<Interval(const Interval&)>& L_of_r,
                      const Interval& h10, const Interval& peak);

struct VerifyOptions {
    int M_eig = 40;
    std::optional<SpaceTag> eig_space; // default: the solution's space
    std::optional<double> tau;
    int jobs = 1;
};

struct VerificationReport {
    ConstantsBundle constants;
    SolutionNorms norms;
    std::optional<EigEnclosure> discrete;
    std::optional<EigEnclosure> corrected;
    std::optional<InverseNormCertificate> inverse;
    NKCertificate nk;
    SpaceTag eig_space = SpaceTag::Full;
    int M_eig = 0;
};

// constants -> pencil -> enclosure -> NK.  Pipeline failures end up in
// nk.reason with proven = false; bad input (e.g. invalid tau) throws.
VerificationReport verify_solution(const GalerkinSolution& u, const VerifyOptions& opt);

} // namespace henon
