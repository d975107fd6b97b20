#pragma once

#include <cstdint>

#include "modica/grid.hpp"
#include "modica/potential.hpp"

namespace modica {

// Parameters of the profile functions phi, xi, Lambda below.
struct ModicaProfile {
    double p;
    double eps;
    ModicaProfile(double p_, double eps_);
    double eps2() const { return eps * eps; }
};

// phi(s) = (2/p)(eps^2 + s)^{p/2}, strictly increasing on s >= 0.
double phi(double s, const ModicaProfile& prof);

// xi(s) = 2 s phi'(s) - phi(s); equals (2(p-1)/p) s^{p/2} at eps = 0 and
// -(2/p) eps^p at s = 0.
double xi(double s, const ModicaProfile& prof);

// Lambda(s) = xi'(s) = (eps^2 + s)^{p/2-2} (eps^2 + (p-1) s) > 0.
// Undefined at s = eps = 0 for p < 2; identically 1 at p = 2.
double lambda(double s, const ModicaProfile& prof);

// xi shifted so that it vanishes at s = 0: xi(s) + (2/p) eps^p.
double xi_shifted(double s, const ModicaProfile& prof);

// g(s) = xi_shifted(s) - delta (eps^2 + s)^{p/2}; g(0) = -delta eps^p and g
// is nondecreasing whenever delta <= 2(p-1)/p.
double g_eps(double s, const ModicaProfile& prof, double delta);

// Pointwise energy-density excess P = xi(|Du|^2) - 2 F(u). Nonpositivity of
// P at eps = 0 is equivalent to |Du|^p <= (p/(p-1)) F(u).
using PField = ScalarField;

// P at interior cells from the discrete gradient; frame cells are set to 0
// and excluded from reports.
PField modica_field(const ScalarField& u, const ModicaProfile& prof, const Potential& P);

struct EstimateReport {
    double max_excess = 0.0;  // max over interior of |Dg|^p - (p/(p-1)) F(g)
    std::int64_t ix = -1;
    std::int64_t iy = -1;
    bool satisfied(double tol = 1e-10) const { return max_excess <= tol; }
};

// Checks the datum-level gradient estimate |Dg|^p <= (p/(p-1)) F(g) cell by
// cell over the interior.
EstimateReport check_initial_estimate(const ScalarField& g, double p, const Potential& P);

}  // namespace modica
