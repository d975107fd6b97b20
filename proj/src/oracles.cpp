#include "modica/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace modica {

Profile1D tanh_wave(std::span<const double> x_samples) {
    Profile1D prof;
    prof.x.assign(x_samples.begin(), x_samples.end());
    prof.u.resize(prof.x.size());
    prof.du.resize(prof.x.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        const double u = std::tanh(prof.x[i] * inv_sqrt2);
        prof.u[i] = u;
        prof.du[i] = (1.0 - u * u) * inv_sqrt2;
    }
    return prof;
}

Profile1D modica_profile(double p, const Potential& P, double u0,
                         std::span<const double> x_samples) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1, 2]");
    if (x_samples.empty()) throw std::invalid_argument("profile needs sample points");
    if (!(P.F(u0) > 0.0)) throw std::runtime_error("degenerate start (constant solution)");

    const double factor = p / (p - 1.0);
    const auto slope = [&](double u) {
        return std::pow(factor * std::max(P.F(u), 0.0), 1.0 / p);
    };
    const auto rk4 = [&](double u, double hstep) {
        const double k1 = slope(u);
        const double k2 = slope(u + 0.5 * hstep * k1);
        const double k3 = slope(u + 0.5 * hstep * k2);
        const double k4 = slope(u + hstep * k3);
        return u + hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    const double x_hi = std::max(0.0, *std::max_element(x_samples.begin(), x_samples.end()));
    const double x_lo = std::min(0.0, *std::min_element(x_samples.begin(), x_samples.end()));
    constexpr double step = 1e-4;
    const std::size_t n_fw = static_cast<std::size_t>(std::ceil(x_hi / step)) + 2;
    const std::size_t n_bw = static_cast<std::size_t>(std::ceil(-x_lo / step)) + 2;

    // Fine nodes at x = (i - c) * step with the anchor u(0) = u0 at index c.
    std::vector<double> fine(n_bw + n_fw - 1);
    const std::size_t c = n_bw - 1;
    fine[c] = u0;
    for (std::size_t i = c; i + 1 < fine.size(); ++i) fine[i + 1] = rk4(fine[i], step);
    for (std::size_t i = c; i > 0; --i) fine[i - 1] = rk4(fine[i], -step);

    Profile1D prof;
    prof.x.assign(x_samples.begin(), x_samples.end());
    prof.u.resize(prof.x.size());
    prof.du.resize(prof.x.size());
    const double x_start = -static_cast<double>(c) * step;
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        const double pos = (prof.x[i] - x_start) / step;
        const auto i0 = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(pos)),
                                                   0,
                                                   static_cast<std::ptrdiff_t>(fine.size()) - 2);
        const double frac = pos - static_cast<double>(i0);
        const double u = fine[static_cast<std::size_t>(i0)] * (1.0 - frac) +
                         fine[static_cast<std::size_t>(i0) + 1] * frac;
        prof.u[i] = u;
        prof.du[i] = slope(u);
    }
    return prof;
}

double spectral_decay(int k, double t) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    return std::exp(-static_cast<double>(k) * static_cast<double>(k) * t);
}

namespace {

std::int64_t fold(std::int64_t i, std::int64_t n, Boundary b) {
    if (b == Boundary::Periodic) {
        i %= n;
        return i < 0 ? i + n : i;
    }
    const std::int64_t m = 2 * (n - 1);
    i = ((i % m) + m) % m;
    return i < n ? i : m - i;
}

}  // namespace

ScalarField brute_mollify(const ScalarField& field, double radius) {
    const Grid& g = field.grid;
    if (radius < g.h) throw std::runtime_error("kernel under-resolved");
    const std::int64_t w = static_cast<std::int64_t>(std::ceil(radius / g.h)) - 1;
    const std::int64_t nx = g.nx();
    const std::int64_t ny = g.ny();

    ScalarField out(g);
    if (g.dim == 1) {
        std::vector<double> weights(static_cast<std::size_t>(2 * w + 1));
        double sum = 0.0;
        for (std::int64_t j = -w; j <= w; ++j) {
            const double t = (static_cast<double>(j) * g.h) / radius;
            const double val = std::exp(-1.0 / (1.0 - t * t));
            weights[static_cast<std::size_t>(j + w)] = val;
            sum += val;
        }
        for (double& val : weights) val /= sum;
        for (std::int64_t i = 0; i < nx; ++i) {
            double acc = 0.0;
            for (std::int64_t j = -w; j <= w; ++j)
                acc += weights[static_cast<std::size_t>(j + w)] *
                       (field.v[static_cast<std::size_t>(fold(i + j, nx, g.boundary))] -
                        field.v[static_cast<std::size_t>(i)]);
            out.v[static_cast<std::size_t>(i)] = field.v[static_cast<std::size_t>(i)] + acc;
        }
        return out;
    }

    struct Entry {
        std::int64_t jy, jx;
        double w;
    };
    std::vector<Entry> entries;
    double sum = 0.0;
    for (std::int64_t jy = -w; jy <= w; ++jy)
        for (std::int64_t jx = -w; jx <= w; ++jx) {
            const double t2 =
                (static_cast<double>(jx * jx + jy * jy) * g.h * g.h) / (radius * radius);
            if (t2 >= 1.0) continue;
            const double val = std::exp(-1.0 / (1.0 - t2));
            entries.push_back({jy, jx, val});
            sum += val;
        }
    for (auto& e : entries) e.w /= sum;
    for (std::int64_t iy = 0; iy < ny; ++iy)
        for (std::int64_t ix = 0; ix < nx; ++ix) {
            const std::size_t i = g.index(ix, iy);
            double acc = 0.0;
            for (const auto& e : entries)
                acc += e.w * (field.v[g.index(fold(ix + e.jx, nx, g.boundary),
                                              fold(iy + e.jy, ny, g.boundary))] -
                              field.v[i]);
            out.v[i] = field.v[i] + acc;
        }
    return out;
}

std::string profile_csv(const Profile1D& prof) {
    std::string out = "x,u\n";
    char buf[128];
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", prof.x[i], prof.u[i]);
        out += buf;
    }
    return out;
}

namespace {

// Local first-order bound near a cell where F nearly vanishes: along each
// axis direction, |psi'(s)| <= C |psi(s)| + slack with C from the quadratic
// growth of F near its zero (F'' bounded on a 0.1-neighborhood) and slack
// covering the nonzero F at the anchor plus stencil error.
void check_ode_bound(const ScalarField& u, double p, const Potential& P, double sup_du,
                     ZerosReport* rep) {
    const Grid& g = u.grid;
    const double h = g.h;
    const std::int64_t window = std::max<std::int64_t>(1, static_cast<std::int64_t>(0.1 / h));
    const double smax = static_cast<double>(window) * h;
    const double factor = p / (p - 1.0);
    const VectorField grad = gradient(u);

    for (std::int64_t iy = 0; iy < g.ny(); ++iy) {
        for (std::int64_t ix = 0; ix < g.nx(); ++ix) {
            if (!g.is_interior(ix, iy)) continue;
            const double u1 = u.at(ix, iy);
            const double f1 = std::max(P.F(u1), 0.0);
            if (f1 >= 1e-3) continue;
            const double k2 = max_abs_fprime(P, u1 - 0.1, u1 + 0.1);
            const double cbound = std::pow(factor * k2, 1.0 / p);
            const double slack =
                std::pow(factor * f1, 1.0 / p) +
                std::pow(factor * std::sqrt(2.0 * k2 * f1) * smax * std::max(sup_du, 1.0),
                         1.0 / p) +
                5.0 * h * h;

            const auto probe = [&](std::int64_t jx, std::int64_t jy, const double* comp) {
                for (std::int64_t k = 1; k <= window; ++k) {
                    const std::int64_t px = ix + k * jx;
                    const std::int64_t py = iy + k * jy;
                    if (px < 0 || px >= g.nx() || py < 0 || py >= g.ny()) break;
                    if (!g.is_interior(px, py)) break;
                    const std::size_t pi = g.index(px, py);
                    const double psi = u.v[pi] - u1;
                    const double lhs = std::fabs(comp[pi]);
                    const double excess = lhs - (cbound * std::fabs(psi) + slack);
                    rep->worst_ode_excess = std::max(rep->worst_ode_excess, excess);
                    ++rep->ode_cells_checked;
                }
            };
            probe(1, 0, grad.x.data());
            probe(-1, 0, grad.x.data());
            if (g.dim == 2) {
                probe(0, 1, grad.y.data());
                probe(0, -1, grad.y.data());
            }
        }
    }
}

}  // namespace

ZerosReport zeros_experiment(const ScalarField& g, const SimulationParams& params,
                             const Potential& P) {
    const Grid& grid = g.grid;
    const double est_tol = std::max(1e-10, 5.0 * grid.h * grid.h);
    if (!check_initial_estimate(g, params.p, P).satisfied(est_tol))
        throw std::invalid_argument("datum violates the initial gradient estimate");

    ZerosReport rep;
    const double sup_g = sup_norm(g);

    ScalarField fg(grid);
    for (std::size_t i = 0; i < g.v.size(); ++i) fg.v[i] = P.F(g.v[i]);
    const bool datum_constant = oscillation(g) <= 1e-8 * sup_g;
    if (!datum_constant && min_interior(fg) <= 0.0) {
        rep.status = ZerosReport::Status::BoundaryCaseExcluded;
        rep.detail = "non-constant datum attains F = 0; boundary case, excluded";
        return rep;
    }

    const RunResult res = run(g, params, P);
    rep.margin = std::numeric_limits<double>::infinity();
    rep.constant_branch_only = true;
    for (const Snapshot& snap : res.snapshots) {
        if (oscillation(snap.field) <= 1e-8 * sup_g) continue;
        rep.constant_branch_only = false;
        ScalarField fu(grid);
        for (std::size_t i = 0; i < snap.field.v.size(); ++i) fu.v[i] = P.F(snap.field.v[i]);
        const double min_f = min_interior(fu);
        rep.margin = std::min(rep.margin, min_f);
        if (min_f <= 0.0) {
            rep.status = ZerosReport::Status::Fail;
            rep.detail = "non-constant state attains F = 0 at t = " + std::to_string(snap.t);
        }
        check_ode_bound(snap.field, params.p, P, res.run_sup_du, &rep);
    }
    if (rep.ode_cells_checked == 0) rep.worst_ode_excess = 0.0;
    if (rep.worst_ode_excess > 0.0 && rep.status == ZerosReport::Status::Pass) {
        rep.status = ZerosReport::Status::Fail;
        rep.detail = "local first-order bound violated near an F ~ 0 cell";
    }
    return rep;
}

}  // namespace modica
