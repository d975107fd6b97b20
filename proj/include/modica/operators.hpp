#pragma once

#include <cstdint>
#include <span>

#include "modica/grid.hpp"
#include "modica/potential.hpp"

namespace modica {

// Exponent p in (1, 2] and regularization eps >= 0. eps = 0 is admissible:
// the reaction exponent (2-p)/2 is nonnegative, and the diffusion matrix is
// the identity at p = 2; the remaining singular combination (p < 2, eps = 0,
// vanishing gradient) is rejected or substituted depending on the caller.
struct RegularizationParams {
    double p;
    double eps;
    RegularizationParams(double p_, double eps_);
    double eps2() const { return eps * eps; }
};

// Symmetric diffusion matrix, dim <= 2 (a12 unused in 1-d).
struct CoeffMatrix {
    int dim = 1;
    double a11 = 1.0;
    double a12 = 0.0;
    double a22 = 1.0;
    double quad(std::span<const double> xi) const;  // xi^T A xi
};

// delta_ij + (p-2) sigma_i sigma_j / (eps^2 + |sigma|^2). Identity at p = 2
// for any sigma; throws "coefficient singular at vanishing gradient" when
// p < 2, eps = 0 and sigma = 0.
CoeffMatrix diffusion_coefficients(std::span<const double> sigma,
                                   const RegularizationParams& params);

enum class SingularPolicy { Strict, SubstituteIdentity };

struct RhsFields {
    ScalarField diffusion;  // a_ij(Du) u_ij, frame cells 0
    ScalarField reaction;   // (eps^2 + |Du|^2)^{(2-p)/2} f(u), frame cells 0
    std::size_t substituted = 0;  // zero-gradient cells given the identity matrix
};

// Assembles both right-hand-side pieces from shared discrete derivatives.
// Strict mode throws on singular cells (p < 2, eps = 0, zero gradient);
// SubstituteIdentity uses the identity matrix there and counts them.
RhsFields rhs_fields(const ScalarField& u, const RegularizationParams& params,
                     const Potential& P, SingularPolicy policy);

ScalarField regularized_diffusion(const ScalarField& u, const RegularizationParams& params);
ScalarField reaction(const ScalarField& u, const RegularizationParams& params,
                     const Potential& P);
// diffusion minus reaction at interior cells.
ScalarField rhs(const ScalarField& u, const RegularizationParams& params, const Potential& P);

struct ConsistencyReport {
    // max over interior cells of |lhs - rhs| scaled by max(1, sup|lhs|, sup|rhs|)
    double max_discrepancy = 0.0;
    std::int64_t ix = -1;
    std::int64_t iy = -1;
    bool ok(double tol = 1e-10) const { return max_discrepancy <= tol; }
};

// Checks per cell that phi' * (a_ij u_ij) equals the expanded divergence
// form phi' * lap(u) + 2 phi'' u_i u_j u_ij, both assembled from the same
// discrete derivatives. The reaction side is shared by the two formulations
// and cancels, so the potential does not enter. Requires eps > 0.
ConsistencyReport divergence_form_consistency(const ScalarField& u,
                                              const RegularizationParams& params,
                                              const Potential& P);

struct ResidualReport {
    double max_residual = 0.0;
    std::size_t eligible_cells = 0;
    bool no_eligible_cells() const { return eligible_cells == 0; }
};

// Residual of the unregularized non-divergence equation
//   (delta_ij + (p-2) u_i u_j / |Du|^2) u_ij - |Du|^{2-p} f(u) - u_t
// with u_t = (u_next - u_now)/dt, evaluated only where
// |Du| >= max(10 eps, 1e-12); cells below the threshold are skipped.
ResidualReport nondivergence_residual(const ScalarField& u_now, const ScalarField& u_next,
                                      double dt, const RegularizationParams& params,
                                      const Potential& P);

}  // namespace modica
