#include "modica/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kernels_detail.hpp"
#include "modica/kernels.hpp"
#include "modica/threading.hpp"

namespace modica {

namespace {

void validate(const Grid& g) {
    if (g.dim != 1 && g.dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    if (!(g.h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
    if (g.cells[0] < 4 || (g.dim == 2 && g.cells[1] < 4))
        throw std::invalid_argument("grid needs at least 4 cells per axis");
}

// Maps an out-of-range index into the grid: wrap for periodic boundaries,
// even reflection about the frame nodes otherwise.
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

Grid Grid::line(std::int64_t nx, double h, double origin, Boundary b) {
    Grid g;
    g.dim = 1;
    g.cells = {nx, 1};
    g.h = h;
    g.origin = {origin, 0.0};
    g.boundary = b;
    validate(g);
    return g;
}

Grid Grid::plane(std::int64_t nx, std::int64_t ny, double h, double ox, double oy, Boundary b) {
    Grid g;
    g.dim = 2;
    g.cells = {nx, ny};
    g.h = h;
    g.origin = {ox, oy};
    g.boundary = b;
    validate(g);
    return g;
}

bool Grid::is_interior(std::int64_t ix, std::int64_t iy) const {
    if (boundary == Boundary::Periodic) return true;
    if (ix <= 0 || ix >= cells[0] - 1) return false;
    if (dim == 2 && (iy <= 0 || iy >= cells[1] - 1)) return false;
    return true;
}

ScalarField::ScalarField(const Grid& g, const std::function<double(double)>& f) : ScalarField(g) {
    if (g.dim != 1) throw std::invalid_argument("1-d sampler on a 2-d grid");
    for (std::int64_t i = 0; i < g.nx(); ++i) v[static_cast<std::size_t>(i)] = f(g.x(i));
}

ScalarField::ScalarField(const Grid& g, const std::function<double(double, double)>& f)
    : ScalarField(g) {
    if (g.dim != 2) throw std::invalid_argument("2-d sampler on a 1-d grid");
    for (std::int64_t iy = 0; iy < g.ny(); ++iy)
        for (std::int64_t ix = 0; ix < g.nx(); ++ix) v[g.index(ix, iy)] = f(g.x(ix), g.y(iy));
}

double VectorField::magnitude(std::size_t i) const {
    if (grid.dim == 1) return std::fabs(x[i]);
    return kernels::detail::norm2_cell(x[i], y[i]);
}

double sup_norm(const ScalarField& f) {
    if (f.v.empty()) throw std::runtime_error("empty field");
    const auto& k = kernels::active();
    return chunked_reduce(
        f.v.size(), [&](std::size_t b, std::size_t e) { return k.max_abs(f.v.data() + b, e - b); },
        [](double a, double b) { return std::max(a, b); }, 0.0);
}

double min_value(const ScalarField& f) {
    if (f.v.empty()) throw std::runtime_error("empty field");
    const auto& k = kernels::active();
    return chunked_reduce(
        f.v.size(),
        [&](std::size_t b, std::size_t e) {
            double mn = 0.0;
            double mx = 0.0;
            k.min_max(f.v.data() + b, e - b, &mn, &mx);
            return mn;
        },
        [](double a, double b) { return std::min(a, b); }, f.v[0]);
}

double max_value(const ScalarField& f) {
    if (f.v.empty()) throw std::runtime_error("empty field");
    const auto& k = kernels::active();
    return chunked_reduce(
        f.v.size(),
        [&](std::size_t b, std::size_t e) {
            double mn = 0.0;
            double mx = 0.0;
            k.min_max(f.v.data() + b, e - b, &mn, &mx);
            return mx;
        },
        [](double a, double b) { return std::max(a, b); }, f.v[0]);
}

double oscillation(const ScalarField& f) { return max_value(f) - min_value(f); }

bool all_finite(const ScalarField& f) {
    for (double x : f.v)
        if (!std::isfinite(x)) return false;
    return true;
}

namespace {

// Applies fn to the contiguous interior span of every interior row.
template <typename Fn>
void for_interior_rows(const Grid& g, Fn&& fn) {
    const bool frame = g.boundary == Boundary::DirichletFrame;
    const std::int64_t x0 = frame ? 1 : 0;
    const std::int64_t x1 = frame ? g.nx() - 1 : g.nx();
    const std::int64_t y0 = (g.dim == 2 && frame) ? 1 : 0;
    const std::int64_t y1 = (g.dim == 2 && frame) ? g.ny() - 1 : g.ny();
    for (std::int64_t iy = y0; iy < y1; ++iy) fn(iy, x0, x1);
}

}  // namespace

double max_interior(const ScalarField& f) {
    const auto& k = kernels::active();
    double m = -std::numeric_limits<double>::infinity();
    for_interior_rows(f.grid, [&](std::int64_t iy, std::int64_t x0, std::int64_t x1) {
        double mn = 0.0;
        double mx = 0.0;
        k.min_max(f.v.data() + f.grid.index(x0, iy), static_cast<std::size_t>(x1 - x0), &mn, &mx);
        m = std::max(m, mx);
    });
    return m;
}

double min_interior(const ScalarField& f) {
    const auto& k = kernels::active();
    double m = std::numeric_limits<double>::infinity();
    for_interior_rows(f.grid, [&](std::int64_t iy, std::int64_t x0, std::int64_t x1) {
        double mn = 0.0;
        double mx = 0.0;
        k.min_max(f.v.data() + f.grid.index(x0, iy), static_cast<std::size_t>(x1 - x0), &mn, &mx);
        m = std::min(m, mn);
    });
    return m;
}

VectorField gradient(const ScalarField& u) {
    const Grid& g = u.grid;
    const auto& k = kernels::active();
    VectorField out(g);
    const std::int64_t nx = g.nx();
    const std::int64_t ny = g.ny();
    const double inv2h = 1.0 / (2.0 * g.h);
    const double invh = 1.0 / g.h;
    const bool periodic = g.boundary == Boundary::Periodic;

    const auto grad_row_x = [&](std::int64_t iy) {
        const double* row = u.v.data() + g.index(0, iy);
        double* gx = out.x.data() + g.index(0, iy);
        k.sub_scale(row + 2, row, inv2h, gx + 1, static_cast<std::size_t>(nx - 2));
        if (periodic) {
            gx[0] = kernels::detail::sub_scale_cell(row[1], row[nx - 1], inv2h);
            gx[nx - 1] = kernels::detail::sub_scale_cell(row[0], row[nx - 2], inv2h);
        } else {
            gx[0] = kernels::detail::sub_scale_cell(row[1], row[0], invh);
            gx[nx - 1] = kernels::detail::sub_scale_cell(row[nx - 1], row[nx - 2], invh);
        }
    };

    if (g.dim == 1) {
        grad_row_x(0);
        return out;
    }

    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t b, std::size_t e) {
        for (std::size_t iy = b; iy < e; ++iy) grad_row_x(static_cast<std::int64_t>(iy));
    });
    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t b, std::size_t e) {
        for (std::size_t r = b; r < e; ++r) {
            const std::int64_t iy = static_cast<std::int64_t>(r);
            double* gy = out.y.data() + g.index(0, iy);
            if (iy >= 1 && iy <= ny - 2) {
                k.sub_scale(u.v.data() + g.index(0, iy + 1), u.v.data() + g.index(0, iy - 1),
                            inv2h, gy, static_cast<std::size_t>(nx));
            } else if (periodic) {
                const std::int64_t up = (iy + 1) % ny;
                const std::int64_t dn = (iy - 1 + ny) % ny;
                k.sub_scale(u.v.data() + g.index(0, up), u.v.data() + g.index(0, dn), inv2h, gy,
                            static_cast<std::size_t>(nx));
            } else if (iy == 0) {
                k.sub_scale(u.v.data() + g.index(0, 1), u.v.data() + g.index(0, 0), invh, gy,
                            static_cast<std::size_t>(nx));
            } else {
                k.sub_scale(u.v.data() + g.index(0, ny - 1), u.v.data() + g.index(0, ny - 2), invh,
                            gy, static_cast<std::size_t>(nx));
            }
        }
    });
    return out;
}

double sup_gradient_interior(const ScalarField& u) {
    const VectorField grad = gradient(u);
    const auto& k = kernels::active();
    double m = 0.0;
    for_interior_rows(u.grid, [&](std::int64_t iy, std::int64_t x0, std::int64_t x1) {
        const std::size_t base = u.grid.index(x0, iy);
        const std::size_t n = static_cast<std::size_t>(x1 - x0);
        if (u.grid.dim == 1)
            m = std::max(m, k.max_abs(grad.x.data() + base, n));
        else
            m = std::max(m, k.norm_max2(grad.x.data() + base, grad.y.data() + base, n));
    });
    return m;
}

double sup_gradient(const ScalarField& u) {
    const VectorField grad = gradient(u);
    const auto& k = kernels::active();
    if (u.grid.dim == 1) return k.max_abs(grad.x.data(), grad.x.size());
    return k.norm_max2(grad.x.data(), grad.y.data(), grad.x.size());
}

std::vector<double> mollifier_weights_1d(double radius, double h) {
    const std::int64_t w = static_cast<std::int64_t>(std::ceil(radius / h)) - 1;
    std::vector<double> weights(static_cast<std::size_t>(2 * w + 1));
    double sum = 0.0;
    for (std::int64_t j = -w; j <= w; ++j) {
        const double t = (static_cast<double>(j) * h) / radius;
        const double val = std::exp(-1.0 / (1.0 - t * t));
        weights[static_cast<std::size_t>(j + w)] = val;
        sum += val;
    }
    for (double& val : weights) val /= sum;
    return weights;
}

namespace {

struct Offset2 {
    std::int64_t jy;
    std::int64_t jx;
    double w;
};

std::vector<Offset2> mollifier_weights_2d(double radius, double h) {
    const std::int64_t w = static_cast<std::int64_t>(std::ceil(radius / h)) - 1;
    std::vector<Offset2> offsets;
    double sum = 0.0;
    for (std::int64_t jy = -w; jy <= w; ++jy) {
        for (std::int64_t jx = -w; jx <= w; ++jx) {
            const double t2 = (static_cast<double>(jx * jx + jy * jy) * h * h) / (radius * radius);
            if (t2 >= 1.0) continue;
            const double val = std::exp(-1.0 / (1.0 - t2));
            offsets.push_back({jy, jx, val});
            sum += val;
        }
    }
    for (auto& o : offsets) o.w /= sum;
    return offsets;
}

}  // namespace

ScalarField mollify(const ScalarField& g, double radius) {
    const Grid& grid = g.grid;
    if (radius < grid.h) throw std::runtime_error("kernel under-resolved");
    const auto& k = kernels::active();
    const std::int64_t nx = grid.nx();
    const std::int64_t ny = grid.ny();

    ScalarField out(grid);
    std::vector<double> acc(grid.size(), 0.0);

    if (grid.dim == 1) {
        const std::vector<double> weights = mollifier_weights_1d(radius, grid.h);
        const std::int64_t w = (static_cast<std::int64_t>(weights.size()) - 1) / 2;
        std::vector<double> ext(static_cast<std::size_t>(nx + 2 * w));
        for (std::int64_t i = 0; i < nx + 2 * w; ++i)
            ext[static_cast<std::size_t>(i)] =
                g.v[static_cast<std::size_t>(fold(i - w, nx, grid.boundary))];
        for (std::int64_t j = -w; j <= w; ++j)
            k.fmacc_dev(acc.data(), ext.data() + (j + w), g.v.data(),
                        weights[static_cast<std::size_t>(j + w)], static_cast<std::size_t>(nx));
    } else {
        const std::vector<Offset2> offsets = mollifier_weights_2d(radius, grid.h);
        std::int64_t w = 0;
        for (const auto& o : offsets) w = std::max({w, std::abs(o.jx), std::abs(o.jy)});
        const std::int64_t nxe = nx + 2 * w;
        std::vector<double> ext(static_cast<std::size_t>(nxe * (ny + 2 * w)));
        for (std::int64_t ky = 0; ky < ny + 2 * w; ++ky) {
            const std::int64_t sy = fold(ky - w, ny, grid.boundary);
            for (std::int64_t kx = 0; kx < nxe; ++kx)
                ext[static_cast<std::size_t>(ky * nxe + kx)] =
                    g.v[grid.index(fold(kx - w, nx, grid.boundary), sy)];
        }
        for (const auto& o : offsets) {
            parallel_for(static_cast<std::size_t>(ny), [&](std::size_t b, std::size_t e) {
                for (std::size_t iy = b; iy < e; ++iy) {
                    const std::int64_t row = static_cast<std::int64_t>(iy);
                    const double* src =
                        ext.data() + (row + o.jy + w) * nxe + (o.jx + w);
                    k.fmacc_dev(acc.data() + grid.index(0, row), src,
                                g.v.data() + grid.index(0, row), o.w,
                                static_cast<std::size_t>(nx));
                }
            });
        }
    }

    for (std::size_t i = 0; i < grid.size(); ++i) out.v[i] = g.v[i] + acc[i];
    return out;
}

JensenReport jensen_report(const ScalarField& g, double p, double radius) {
    if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("p must lie in (1, 2]");
    const Grid& grid = g.grid;

    const ScalarField gk = mollify(g, radius);
    const VectorField dgk = gradient(gk);
    const VectorField dg = gradient(g);

    ScalarField dgp(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) dgp.v[i] = std::pow(dg.magnitude(i), p);
    const ScalarField rhs = mollify(dgp, radius);

    JensenReport rep;
    rep.worst_violation = -std::numeric_limits<double>::infinity();
    for (std::int64_t iy = 0; iy < grid.ny(); ++iy) {
        for (std::int64_t ix = 0; ix < grid.nx(); ++ix) {
            if (!grid.is_interior(ix, iy)) continue;
            const std::size_t i = grid.index(ix, iy);
            const double excess = std::pow(dgk.magnitude(i), p) - rhs.v[i];
            ++rep.cells_checked;
            if (excess > rep.worst_violation) {
                rep.worst_violation = excess;
                rep.ix = ix;
                rep.iy = iy;
            }
        }
    }
    return rep;
}

}  // namespace modica
