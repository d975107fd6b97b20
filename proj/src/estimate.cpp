#include "modica/estimate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace modica {

ModicaProfile::ModicaProfile(double p_, double eps_) : p(p_), eps(eps_) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1, 2]");
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
}

double phi(double s, const ModicaProfile& prof) {
    if (s < 0.0) throw std::invalid_argument("phi: s must be >= 0");
    return (2.0 / prof.p) * std::pow(prof.eps2() + s, prof.p / 2.0);
}

double xi(double s, const ModicaProfile& prof) {
    if (s < 0.0) throw std::invalid_argument("xi: s must be >= 0");
    const double base = prof.eps2() + s;
    if (base == 0.0) return 0.0;
    return 2.0 * s * std::pow(base, prof.p / 2.0 - 1.0) -
           (2.0 / prof.p) * std::pow(base, prof.p / 2.0);
}

double lambda(double s, const ModicaProfile& prof) {
    if (s < 0.0) throw std::invalid_argument("lambda: s must be >= 0");
    if (prof.p == 2.0) return 1.0;
    const double base = prof.eps2() + s;
    if (base == 0.0) throw std::runtime_error("lambda undefined at s = eps = 0 for p < 2");
    return std::pow(base, prof.p / 2.0 - 2.0) * (prof.eps2() + (prof.p - 1.0) * s);
}

double xi_shifted(double s, const ModicaProfile& prof) {
    return xi(s, prof) + (2.0 / prof.p) * std::pow(prof.eps, prof.p);
}

double g_eps(double s, const ModicaProfile& prof, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
    return xi_shifted(s, prof) - delta * std::pow(prof.eps2() + s, prof.p / 2.0);
}

PField modica_field(const ScalarField& u, const ModicaProfile& prof, const Potential& P) {
    const Grid& g = u.grid;
    const VectorField grad = gradient(u);
    PField out(g);
    for (std::int64_t iy = 0; iy < g.ny(); ++iy) {
        for (std::int64_t ix = 0; ix < g.nx(); ++ix) {
            if (!g.is_interior(ix, iy)) continue;
            const std::size_t i = g.index(ix, iy);
            double s = grad.x[i] * grad.x[i];
            if (g.dim == 2) s += grad.y[i] * grad.y[i];
            out.v[i] = xi(s, prof) - 2.0 * P.F(u.v[i]);
        }
    }
    return out;
}

EstimateReport check_initial_estimate(const ScalarField& g, double p, const Potential& P) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1, 2]");
    const Grid& grid = g.grid;
    const VectorField grad = gradient(g);
    const double factor = p / (p - 1.0);

    EstimateReport rep;
    rep.max_excess = -std::numeric_limits<double>::infinity();
    for (std::int64_t iy = 0; iy < grid.ny(); ++iy) {
        for (std::int64_t ix = 0; ix < grid.nx(); ++ix) {
            if (!grid.is_interior(ix, iy)) continue;
            const std::size_t i = grid.index(ix, iy);
            const double excess = std::pow(grad.magnitude(i), p) - factor * P.F(g.v[i]);
            if (excess > rep.max_excess) {
                rep.max_excess = excess;
                rep.ix = ix;
                rep.iy = iy;
            }
        }
    }
    return rep;
}

}  // namespace modica
