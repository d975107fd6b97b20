#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace modica {

enum class Boundary { Periodic, DirichletFrame };

// Uniform node-centered lattice in one or two dimensions. With a Dirichlet
// frame the outermost node ring is clamped data and never updated by time
// stepping; periodic grids wrap.
struct Grid {
    int dim = 1;
    std::array<std::int64_t, 2> cells{0, 1};  // nx, ny (ny = 1 in 1-d)
    double h = 0.0;
    std::array<double, 2> origin{0.0, 0.0};
    Boundary boundary = Boundary::Periodic;

    static Grid line(std::int64_t nx, double h, double origin, Boundary b);
    static Grid plane(std::int64_t nx, std::int64_t ny, double h, double ox, double oy,
                      Boundary b);

    std::int64_t nx() const { return cells[0]; }
    std::int64_t ny() const { return cells[1]; }
    std::size_t size() const { return static_cast<std::size_t>(cells[0] * cells[1]); }
    std::size_t index(std::int64_t ix, std::int64_t iy = 0) const {
        return static_cast<std::size_t>(iy * cells[0] + ix);
    }
    double x(std::int64_t ix) const { return origin[0] + static_cast<double>(ix) * h; }
    double y(std::int64_t iy) const { return origin[1] + static_cast<double>(iy) * h; }

    // Frame nodes exist only under DirichletFrame; on periodic grids every
    // node counts as interior.
    bool is_interior(std::int64_t ix, std::int64_t iy = 0) const;

    bool operator==(const Grid&) const = default;
};

struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g) : grid(g), v(g.size(), 0.0) {}
    ScalarField(const Grid& g, const std::function<double(double)>& f);          // 1-d sample
    ScalarField(const Grid& g, const std::function<double(double, double)>& f);  // 2-d sample

    double& at(std::int64_t ix, std::int64_t iy = 0) { return v[grid.index(ix, iy)]; }
    double at(std::int64_t ix, std::int64_t iy = 0) const { return v[grid.index(ix, iy)]; }
};

struct VectorField {
    Grid grid;
    std::vector<double> x;  // d/dx component
    std::vector<double> y;  // d/dy component, empty in 1-d

    VectorField() = default;
    explicit VectorField(const Grid& g)
        : grid(g), x(g.size(), 0.0), y(g.dim == 2 ? g.size() : 0, 0.0) {}

    // Euclidean magnitude at a cell.
    double magnitude(std::size_t i) const;
};

// Max over cells of |value|. Errors on an empty field.
double sup_norm(const ScalarField& f);
double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
double oscillation(const ScalarField& f);
bool all_finite(const ScalarField& f);

// Restricted to interior cells (all cells on periodic grids).
double max_interior(const ScalarField& f);
double min_interior(const ScalarField& f);

// Discrete gradient: centered differences at interior cells, two-point
// one-sided differences on the Dirichlet frame, wrap-around when periodic.
// Exact on affine fields at interior cells.
VectorField gradient(const ScalarField& u);
// Max over interior cells of the gradient magnitude.
double sup_gradient_interior(const ScalarField& u);
// Max over all cells (frame cells use the one-sided differences).
double sup_gradient(const ScalarField& u);

// Smoothing by a compactly supported bump kernel of the given radius,
// discretized on the lattice and renormalized to unit mass. The field is
// extended by even reflection across a Dirichlet frame (wrap when periodic),
// and the convolution is accumulated in deviation form so constants are
// preserved exactly and neither the sup norm of the field nor of its
// gradient can grow beyond rounding. radius < h is rejected.
ScalarField mollify(const ScalarField& g, double radius);

// Weights of the discrete mollifier, in the ascending offset order used by
// the accumulation (1-d: j = -W..W; 2-d: (jy, jx) lexicographic).
std::vector<double> mollifier_weights_1d(double radius, double h);

struct JensenReport {
    double worst_violation = 0.0;  // max over checked cells of |Dg_k|^p - mollify(|Dg|^p)
    std::int64_t ix = -1;
    std::int64_t iy = -1;
    std::size_t cells_checked = 0;
    bool ok(double tol = 1e-10) const { return worst_violation <= tol; }
};

// Pointwise convexity check relating the gradient of the mollified datum to
// the mollified p-th power of the gradient, over interior cells.
JensenReport jensen_report(const ScalarField& g, double p, double radius);

}  // namespace modica
