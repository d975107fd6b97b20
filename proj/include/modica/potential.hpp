#pragma once

#include <functional>
#include <string>
#include <vector>

namespace modica {

// Nonlinearity F with its first two derivatives. The admissible range
// [lo, hi] is where reaction terms may evaluate the potential; F is expected
// to be nonnegative there (see nonneg_report).
struct Potential {
    std::string name;
    std::function<double(double)> F;
    std::function<double(double)> f;   // F'
    std::function<double(double)> fp;  // F''
    double lo = -1e6;
    double hi = 1e6;
};

// F(u) = (1 - u^2)^2 / 4, wells at u = +-1, f(u) = u^3 - u.
Potential double_well();
// F(u) = 1 - cos u, f(u) = sin u.
Potential sine_potential();
// F identically zero (pure diffusion).
Potential zero_potential();
// F(u) = sum_k c[k] u^k, coefficients low degree first.
Potential poly_potential(const std::vector<double>& coeffs);

// Sign-change certificate for the reaction term: f(M1) <= 0 <= f(M2) with
// -q <= M1 <= -M and M <= M2 <= q. Construction validates the inequalities.
struct AssumptionCertificate {
    double M;
    double M1;
    double M2;
    double q;
};

// Scans f outward from +-M with step 1e-3 up to q = M + 10 and returns the
// first admissible pair (M1, M2). Throws if either side has no sign change
// within the scan bound.
AssumptionCertificate certify_assumption(const Potential& P, double M);

struct NonnegReport {
    double min_value = 0.0;
    double argmin = 0.0;
    bool flagged = false;  // true when min_value < -1e-12
};

// Min of F over 1e4 uniform samples of [lo, hi].
NonnegReport nonneg_report(const Potential& P, double lo, double hi);

// Max of |F''| over a uniform scan of [lo, hi]; used for time-step bounds
// and contraction references.
double max_abs_fprime(const Potential& P, double lo, double hi);

}  // namespace modica
