#pragma once

// Enclosures of the scalar constants used by the certificate: the shift tau,
// embedding constants C_2 and C_p, the projection error constants C_M and
// C_M^tau, the weight bound d and the sup-norm of tau + f'(u-hat).

#include "henon/interval.hpp"
#include "henon/legendre.hpp"
#include "henon/problem.hpp"
#include "henon/sup_bound.hpp"

#include <optional>
#include <span>

namespace henon {

struct ConstantsBundle {
    Interval tau;
    Interval C2;
    Interval Cp1; // C_{p+1}
    Interval CM;
    Interval CMtau;
    Interval d;
    Interval Wsup; // upper endpoint bounds sup |tau + f'(u-hat)|
    bool wsup_warning = false;
};

// Default: the smallest positive double.  Overrides must be positive
// ("invalid-tau").
Interval choose_tau(std::optional<double> override_value = std::nullopt);

// 1 / sqrt(N pi^2 + tau)
Interval embed_C2(int N, const Interval& tau);
// ||u||_{L^p} <= C_p ||u||_{H10} on (0,1), p > 2.
Interval embed_Cp_1D(double p, const Interval& tau);
// Same on the unit square (N = 2), p > 2; independent of tau.
Interval embed_Cp_ND(int N, double p);
// C_p for the dimension of spec (p > 2), C_2 for p == 2.
Interval embed_Cp(int N, double p, const Interval& tau);

// ||grad(u - P_M u)|| <= C_M ||Lap u|| on (0,1)^N.
Interval proj_CM(int M);
Interval proj_CMtau(int M, const Interval& tau);

// max |x - x0|^l over the box.
Interval weight_d(const ProblemSpec& spec);

// Rigorous upper bound of sup (tau + p w |u|^{p-1}) over the box.
SupResult wsup_bound(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                     const Interval& tau, const SupOptions& opt = {});

// Everything above for one solution; M is the eigenvalue truncation order.
ConstantsBundle compute_constants(const ProblemSpec& spec, const SymmetrySpace& space, std::span<const double> coeffs,
                                  int M, const Interval& tau);

} // namespace henon
