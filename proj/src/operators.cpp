#include "modica/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kernels_detail.hpp"
#include "modica/kernels.hpp"
#include "modica/threading.hpp"

namespace modica {

RegularizationParams::RegularizationParams(double p_, double eps_) : p(p_), eps(eps_) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1, 2]");
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
}

double CoeffMatrix::quad(std::span<const double> xi) const {
    if (dim == 1) return a11 * xi[0] * xi[0];
    return a11 * xi[0] * xi[0] + 2.0 * a12 * xi[0] * xi[1] + a22 * xi[1] * xi[1];
}

CoeffMatrix diffusion_coefficients(std::span<const double> sigma,
                                   const RegularizationParams& params) {
    CoeffMatrix m;
    m.dim = static_cast<int>(sigma.size());
    if (m.dim != 1 && m.dim != 2) throw std::invalid_argument("sigma must have 1 or 2 components");
    if (params.p == 2.0) return m;  // identity regardless of sigma and eps

    double s = sigma[0] * sigma[0];
    if (m.dim == 2) s += sigma[1] * sigma[1];
    const double den = params.eps2() + s;
    if (den == 0.0) throw std::runtime_error("coefficient singular at vanishing gradient");
    const double pm2 = params.p - 2.0;
    m.a11 = 1.0 + pm2 * sigma[0] * sigma[0] / den;
    if (m.dim == 2) {
        m.a22 = 1.0 + pm2 * sigma[1] * sigma[1] / den;
        m.a12 = pm2 * sigma[0] * sigma[1] / den;
    }
    return m;
}

namespace {

struct Derivs {
    VectorField grad;
    ScalarField uxx;
    ScalarField uyy;  // empty in 1-d
    ScalarField uxy;  // empty in 1-d
};

// Second derivatives by centered stencils (3-point laplacian pieces, 4-point
// cross for the mixed term). Frame cells stay 0; periodic grids wrap.
Derivs compute_derivs(const ScalarField& u) {
    const Grid& g = u.grid;
    const auto& k = kernels::active();
    const std::int64_t nx = g.nx();
    const std::int64_t ny = g.ny();
    const double invh2 = 1.0 / (g.h * g.h);
    const double inv4h2 = 1.0 / (4.0 * g.h * g.h);
    const bool periodic = g.boundary == Boundary::Periodic;

    Derivs d;
    d.grad = gradient(u);
    d.uxx = ScalarField(g);

    const auto xx_row = [&](std::int64_t iy) {
        const double* row = u.v.data() + g.index(0, iy);
        double* out = d.uxx.v.data() + g.index(0, iy);
        k.lap3_scale(row + 2, row, row + 1, invh2, out + 1, static_cast<std::size_t>(nx - 2));
        if (periodic) {
            out[0] = kernels::detail::lap3_scale_cell(row[1], row[nx - 1], row[0], invh2);
            out[nx - 1] =
                kernels::detail::lap3_scale_cell(row[0], row[nx - 2], row[nx - 1], invh2);
        }
    };

    if (g.dim == 1) {
        xx_row(0);
        return d;
    }

    d.uyy = ScalarField(g);
    d.uxy = ScalarField(g);
    const std::int64_t y0 = periodic ? 0 : 1;
    const std::int64_t y1 = periodic ? ny : ny - 1;

    parallel_for(static_cast<std::size_t>(y1 - y0), [&](std::size_t b, std::size_t e) {
        for (std::size_t r = b; r < e; ++r) {
            const std::int64_t iy = y0 + static_cast<std::int64_t>(r);
            xx_row(iy);

            const std::int64_t up = periodic ? (iy + 1) % ny : iy + 1;
            const std::int64_t dn = periodic ? (iy - 1 + ny) % ny : iy - 1;
            const double* rowc = u.v.data() + g.index(0, iy);
            const double* rowu = u.v.data() + g.index(0, up);
            const double* rowd = u.v.data() + g.index(0, dn);

            double* oyy = d.uyy.v.data() + g.index(0, iy);
            double* oxy = d.uxy.v.data() + g.index(0, iy);
            if (periodic) {
                k.lap3_scale(rowu, rowd, rowc, invh2, oyy, static_cast<std::size_t>(nx));
                k.cross4_scale(rowu + 2, rowu, rowd + 2, rowd, inv4h2, oxy + 1,
                               static_cast<std::size_t>(nx - 2));
                oxy[0] = kernels::detail::cross4_scale_cell(rowu[1], rowu[nx - 1], rowd[1],
                                                            rowd[nx - 1], inv4h2);
                oxy[nx - 1] = kernels::detail::cross4_scale_cell(rowu[0], rowu[nx - 2], rowd[0],
                                                                 rowd[nx - 2], inv4h2);
            } else {
                k.lap3_scale(rowu + 1, rowd + 1, rowc + 1, invh2, oyy + 1,
                             static_cast<std::size_t>(nx - 2));
                k.cross4_scale(rowu + 2, rowu, rowd + 2, rowd, inv4h2, oxy + 1,
                               static_cast<std::size_t>(nx - 2));
            }
        }
    });
    return d;
}

void check_admissible(const ScalarField& u, const Potential& P) {
    const Grid& g = u.grid;
    for (std::int64_t iy = 0; iy < g.ny(); ++iy)
        for (std::int64_t ix = 0; ix < g.nx(); ++ix) {
            if (!g.is_interior(ix, iy)) continue;
            const double val = u.at(ix, iy);
            if (val < P.lo || val > P.hi)
                throw std::runtime_error("state left admissible range");
        }
}

}  // namespace

RhsFields rhs_fields(const ScalarField& u, const RegularizationParams& params,
                     const Potential& P, SingularPolicy policy) {
    const Grid& g = u.grid;
    const auto& k = kernels::active();
    const Derivs d = compute_derivs(u);
    const double pm2 = params.p - 2.0;
    const double e2 = params.eps2();
    const bool periodic = g.boundary == Boundary::Periodic;
    const std::int64_t nx = g.nx();
    const std::int64_t ny = g.ny();

    RhsFields out;
    out.diffusion = ScalarField(g);
    out.reaction = ScalarField(g);

    std::size_t substituted = 0;
    const std::int64_t y0 = (g.dim == 2 && !periodic) ? 1 : 0;
    const std::int64_t y1 = (g.dim == 2 && !periodic) ? ny - 1 : (g.dim == 2 ? ny : 1);
    const std::int64_t x0 = periodic ? 0 : 1;
    const std::int64_t x1 = periodic ? nx : nx - 1;

    for (std::int64_t iy = y0; iy < y1; ++iy) {
        const std::size_t base = g.index(x0, iy);
        const std::size_t n = static_cast<std::size_t>(x1 - x0);
        if (g.dim == 1) {
            substituted += k.diffusion1(d.grad.x.data() + base, d.uxx.v.data() + base, pm2, e2,
                                        out.diffusion.v.data() + base, n);
        } else {
            substituted += k.diffusion2(d.grad.x.data() + base, d.grad.y.data() + base,
                                        d.uxx.v.data() + base, d.uyy.v.data() + base,
                                        d.uxy.v.data() + base, pm2, e2,
                                        out.diffusion.v.data() + base, n);
        }
    }
    if (params.p < 2.0) {
        out.substituted = substituted;
        if (substituted > 0 && policy == SingularPolicy::Strict)
            throw std::runtime_error("coefficient singular at vanishing gradient");
    }

    check_admissible(u, P);
    const double expo = (2.0 - params.p) / 2.0;
    for (std::int64_t iy = y0; iy < y1; ++iy) {
        for (std::int64_t ix = x0; ix < x1; ++ix) {
            const std::size_t i = g.index(ix, iy);
            double s = d.grad.x[i] * d.grad.x[i];
            if (g.dim == 2) s += d.grad.y[i] * d.grad.y[i];
            out.reaction.v[i] = std::pow(e2 + s, expo) * P.f(u.v[i]);
        }
    }
    return out;
}

ScalarField regularized_diffusion(const ScalarField& u, const RegularizationParams& params) {
    // Reaction needs a potential; reuse the assembly with F = 0.
    return rhs_fields(u, params, zero_potential(), SingularPolicy::Strict).diffusion;
}

ScalarField reaction(const ScalarField& u, const RegularizationParams& params,
                     const Potential& P) {
    return rhs_fields(u, params, P, SingularPolicy::SubstituteIdentity).reaction;
}

ScalarField rhs(const ScalarField& u, const RegularizationParams& params, const Potential& P) {
    const RhsFields f = rhs_fields(u, params, P, SingularPolicy::Strict);
    ScalarField out(u.grid);
    kernels::active().sub_scale(f.diffusion.v.data(), f.reaction.v.data(), 1.0, out.v.data(),
                                out.v.size());
    return out;
}

ConsistencyReport divergence_form_consistency(const ScalarField& u,
                                              const RegularizationParams& params,
                                              const Potential& /*shared by both forms*/) {
    if (params.eps <= 0.0) throw std::runtime_error("divergence form requires eps > 0");
    const Grid& g = u.grid;
    const Derivs d = compute_derivs(u);
    const ScalarField adiff = regularized_diffusion(u, params);
    const double e2 = params.eps2();
    const double half_p = params.p / 2.0;

    ScalarField lhs(g);
    ScalarField rhs_f(g);
    for (std::int64_t iy = 0; iy < g.ny(); ++iy) {
        for (std::int64_t ix = 0; ix < g.nx(); ++ix) {
            if (!g.is_interior(ix, iy)) continue;
            const std::size_t i = g.index(ix, iy);
            const double gx = d.grad.x[i];
            const double gy = g.dim == 2 ? d.grad.y[i] : 0.0;
            const double s = gx * gx + gy * gy;
            const double phi1 = std::pow(e2 + s, half_p - 1.0);
            const double phi2 = (half_p - 1.0) * std::pow(e2 + s, half_p - 2.0);
            double lap = d.uxx.v[i];
            double quad = gx * gx * d.uxx.v[i];
            if (g.dim == 2) {
                lap += d.uyy.v[i];
                quad += 2.0 * gx * gy * d.uxy.v[i] + gy * gy * d.uyy.v[i];
            }
            lhs.v[i] = phi1 * adiff.v[i];
            rhs_f.v[i] = phi1 * lap + 2.0 * phi2 * quad;
        }
    }

    const double scale = std::max({1.0, sup_norm(lhs), sup_norm(rhs_f)});
    ConsistencyReport rep;
    for (std::int64_t iy = 0; iy < g.ny(); ++iy) {
        for (std::int64_t ix = 0; ix < g.nx(); ++ix) {
            if (!g.is_interior(ix, iy)) continue;
            const std::size_t i = g.index(ix, iy);
            const double disc = std::fabs(lhs.v[i] - rhs_f.v[i]) / scale;
            if (disc > rep.max_discrepancy) {
                rep.max_discrepancy = disc;
                rep.ix = ix;
                rep.iy = iy;
            }
        }
    }
    return rep;
}

ResidualReport nondivergence_residual(const ScalarField& u_now, const ScalarField& u_next,
                                      double dt, const RegularizationParams& params,
                                      const Potential& P) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(u_now.grid == u_next.grid)) throw std::invalid_argument("fields on different grids");
    const Grid& g = u_now.grid;
    const Derivs d = compute_derivs(u_now);
    const double pm2 = params.p - 2.0;
    const double expo = (2.0 - params.p) / 2.0;
    const double threshold = std::max(10.0 * params.eps, 1e-12);

    ResidualReport rep;
    for (std::int64_t iy = 0; iy < g.ny(); ++iy) {
        for (std::int64_t ix = 0; ix < g.nx(); ++ix) {
            if (!g.is_interior(ix, iy)) continue;
            const std::size_t i = g.index(ix, iy);
            const double gx = d.grad.x[i];
            const double gy = g.dim == 2 ? d.grad.y[i] : 0.0;
            const double s = gx * gx + gy * gy;
            if (std::sqrt(s) < threshold) continue;
            double lap = d.uxx.v[i];
            double quad = gx * gx * d.uxx.v[i];
            if (g.dim == 2) {
                lap += d.uyy.v[i];
                quad += 2.0 * gx * gy * d.uxy.v[i] + gy * gy * d.uyy.v[i];
            }
            const double diff_term = lap + pm2 * quad / s;
            const double react = std::pow(s, expo) * P.f(u_now.v[i]);
            const double ut = (u_next.v[i] - u_now.v[i]) / dt;
            rep.max_residual = std::max(rep.max_residual, std::fabs(diff_term - react - ut));
            ++rep.eligible_cells;
        }
    }
    return rep;
}

}  // namespace modica
