#include "modica/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace modica {

Potential double_well() {
    Potential P;
    P.name = "double_well";
    P.F = [](double u) {
        const double w = 1.0 - u * u;
        return w * w / 4.0;
    };
    P.f = [](double u) { return u * u * u - u; };
    P.fp = [](double u) { return 3.0 * u * u - 1.0; };
    P.lo = -6.0;
    P.hi = 6.0;
    return P;
}

Potential sine_potential() {
    Potential P;
    P.name = "sine";
    P.F = [](double u) { return 1.0 - std::cos(u); };
    P.f = [](double u) { return std::sin(u); };
    P.fp = [](double u) { return std::cos(u); };
    P.lo = -1e6;
    P.hi = 1e6;
    return P;
}

Potential zero_potential() {
    Potential P;
    P.name = "zero";
    P.F = [](double) { return 0.0; };
    P.f = [](double) { return 0.0; };
    P.fp = [](double) { return 0.0; };
    P.lo = -1e300;
    P.hi = 1e300;
    return P;
}

Potential poly_potential(const std::vector<double>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("poly potential needs coefficients");
    auto horner = [](const std::vector<double>& c, double u) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * u + c[i];
        return acc;
    };
    std::vector<double> d1(coeffs.size() > 1 ? coeffs.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d1[k - 1] = static_cast<double>(k) * coeffs[k];
    std::vector<double> d2(d1.size() > 1 ? d1.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < d1.size(); ++k) d2[k - 1] = static_cast<double>(k) * d1[k];

    Potential P;
    std::ostringstream name;
    name << "poly:";
    for (std::size_t i = 0; i < coeffs.size(); ++i) name << (i ? "," : "") << coeffs[i];
    P.name = name.str();
    P.F = [coeffs, horner](double u) { return horner(coeffs, u); };
    P.f = [d1, horner](double u) { return horner(d1, u); };
    P.fp = [d2, horner](double u) { return horner(d2, u); };
    P.lo = -100.0;
    P.hi = 100.0;
    return P;
}

AssumptionCertificate certify_assumption(const Potential& P, double M) {
    if (!std::isfinite(M) || M < 0.0) throw std::invalid_argument("M must be finite and >= 0");
    constexpr double step = 1e-3;
    const double q = M + 10.0;
    const std::int64_t count = static_cast<std::int64_t>(std::floor((q - M) / step)) + 1;

    double M2 = 0.0;
    bool found2 = false;
    for (std::int64_t k = 0; k < count; ++k) {
        const double u = M + static_cast<double>(k) * step;
        if (u > q) break;
        if (P.f(u) >= 0.0) {
            M2 = u;
            found2 = true;
            break;
        }
    }
    double M1 = 0.0;
    bool found1 = false;
    for (std::int64_t k = 0; k < count; ++k) {
        const double u = -M - static_cast<double>(k) * step;
        if (u < -q) break;
        if (P.f(u) <= 0.0) {
            M1 = u;
            found1 = true;
            break;
        }
    }
    if (!found1 || !found2)
        throw std::runtime_error("sign-change assumption not certifiable within scan bound");

    AssumptionCertificate cert{M, M1, M2, q};
    if (!(-cert.q <= cert.M1 && cert.M1 <= -M && M <= cert.M2 && cert.M2 <= cert.q))
        throw std::runtime_error("certificate bounds out of order");
    if (!(P.f(cert.M1) <= 0.0 && 0.0 <= P.f(cert.M2)))
        throw std::runtime_error("certificate sign condition failed");
    return cert;
}

NonnegReport nonneg_report(const Potential& P, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("nonneg_report needs lo < hi");
    constexpr std::int64_t samples = 10000;
    NonnegReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < samples; ++i) {
        const double u = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
        const double val = P.F(u);
        if (val < rep.min_value) {
            rep.min_value = val;
            rep.argmin = u;
        }
    }
    rep.flagged = rep.min_value < -1e-12;
    return rep;
}

double max_abs_fprime(const Potential& P, double lo, double hi) {
    constexpr std::int64_t samples = 2001;
    double m = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double u = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
        m = std::max(m, std::fabs(P.fp(u)));
    }
    return m;
}

}  // namespace modica
