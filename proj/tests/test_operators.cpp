#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "modica/operators.hpp"

using namespace modica;

TEST_CASE("regularization params validation") {
    CHECK_THROWS_WITH(RegularizationParams(2.5, 0.0), "p must lie in (1, 2]");
    CHECK_THROWS_WITH(RegularizationParams(1.0, 0.0), "p must lie in (1, 2]");
    CHECK_THROWS(RegularizationParams(1.5, -0.1));
}

TEST_CASE("diffusion coefficients: vanishing numerator and p = 2") {
    const std::array<double, 2> zero{0.0, 0.0};
    const CoeffMatrix a = diffusion_coefficients(zero, RegularizationParams(1.5, 0.1));
    CHECK(a.a11 == 1.0);
    CHECK(a.a22 == 1.0);
    CHECK(a.a12 == 0.0);

    const std::array<double, 2> sigma{3.0, -4.0};
    const CoeffMatrix b = diffusion_coefficients(sigma, RegularizationParams(2.0, 0.0));
    CHECK(b.a11 == 1.0);
    CHECK(b.a22 == 1.0);
    CHECK(b.a12 == 0.0);
}

TEST_CASE("diffusion coefficients: eigenvalue along sigma is p - 1") {
    const std::array<double, 2> sigma{1.0, 0.0};
    const CoeffMatrix a = diffusion_coefficients(sigma, RegularizationParams(1.5, 0.0));
    CHECK(a.a11 == doctest::Approx(0.5));
    CHECK(a.a22 == doctest::Approx(1.0));
    CHECK(a.a12 == 0.0);
}

TEST_CASE("diffusion coefficients: singular case rejected") {
    const std::array<double, 2> zero{0.0, 0.0};
    CHECK_THROWS_WITH(diffusion_coefficients(zero, RegularizationParams(1.5, 0.0)),
                      "coefficient singular at vanishing gradient");
}

TEST_CASE("uniform ellipticity over random directions") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double p : {1.1, 1.5, 2.0}) {
        for (double eps : {0.0, 0.1}) {
            const RegularizationParams params(p, eps);
            const double lo = std::min(1.0, p - 1.0);
            const double hi = std::max(1.0, p - 1.0);
            for (int trial = 0; trial < 1000; ++trial) {
                const std::array<double, 2> sigma{dist(rng), dist(rng)};
                const std::array<double, 2> xi{dist(rng), dist(rng)};
                const double norm2 = xi[0] * xi[0] + xi[1] * xi[1];
                const double q = diffusion_coefficients(sigma, params).quad(xi);
                CHECK(q >= lo * norm2 - 1e-12);
                CHECK(q <= hi * norm2 + 1e-12);
            }
        }
    }
}

TEST_CASE("diffusion coefficients depend on sigma only through its outer product") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    const RegularizationParams params(1.3, 0.05);
    for (int trial = 0; trial < 50; ++trial) {
        const std::array<double, 2> sigma{dist(rng), dist(rng)};
        const std::array<double, 2> flipped{-sigma[0], -sigma[1]};
        const CoeffMatrix a = diffusion_coefficients(sigma, params);
        const CoeffMatrix b = diffusion_coefficients(flipped, params);
        CHECK(a.a11 == b.a11);
        CHECK(a.a12 == b.a12);
        CHECK(a.a22 == b.a22);
    }
}

TEST_CASE("regularized diffusion vanishes on affine fields") {
    const Grid g = Grid::line(64, 0.1, -3.2, Boundary::DirichletFrame);
    const ScalarField u(g, [](double x) { return 1.5 * x - 0.25; });
    const ScalarField d = regularized_diffusion(u, RegularizationParams(1.5, 0.1));
    for (std::int64_t i = 1; i < g.nx() - 1; ++i)
        CHECK(std::fabs(d.v[static_cast<std::size_t>(i)]) <= 1e-11);
}

TEST_CASE("p = 2 diffusion reduces to the laplacian, exact on quadratics") {
    const Grid g = Grid::line(64, 2.0 / 63.0, -1.0, Boundary::DirichletFrame);
    const ScalarField u(g, [](double x) { return x * x; });
    const ScalarField d = regularized_diffusion(u, RegularizationParams(2.0, 0.0));
    for (std::int64_t i = 1; i < g.nx() - 1; ++i)
        CHECK(d.v[static_cast<std::size_t>(i)] == doctest::Approx(2.0).epsilon(1e-11));

    const Grid g2 = Grid::plane(24, 24, 0.1, -1.2, -1.2, Boundary::DirichletFrame);
    const ScalarField u2(g2, [](double x, double y) { return x * x + y * y; });
    const ScalarField d2 = regularized_diffusion(u2, RegularizationParams(2.0, 0.0));
    for (std::int64_t iy = 1; iy < 23; ++iy)
        for (std::int64_t ix = 1; ix < 23; ++ix)
            CHECK(d2.v[g2.index(ix, iy)] == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("1-d diffusion matches an independent scalar assembly") {
    const Grid g = Grid::line(128, 2.0 * std::numbers::pi / 128.0, 0.0, Boundary::Periodic);
    const ScalarField u(g, [](double x) { return std::sin(x); });
    const RegularizationParams params(1.5, 0.1);
    const ScalarField d = regularized_diffusion(u, params);

    const double h = g.h;
    for (std::int64_t i = 0; i < g.nx(); ++i) {
        const std::int64_t ip = (i + 1) % g.nx();
        const std::int64_t im = (i - 1 + g.nx()) % g.nx();
        const double gx = (u.v[static_cast<std::size_t>(ip)] -
                           u.v[static_cast<std::size_t>(im)]) / (2.0 * h);
        const double uxx = (u.v[static_cast<std::size_t>(ip)] -
                            2.0 * u.v[static_cast<std::size_t>(i)] +
                            u.v[static_cast<std::size_t>(im)]) / (h * h);
        const double expect = (1.0 + (params.p - 2.0) * gx * gx /
                                         (params.eps2() + gx * gx)) * uxx;
        CHECK(std::fabs(d.v[static_cast<std::size_t>(i)] - expect) <= 1e-12);
    }
}

TEST_CASE("reaction term") {
    const Grid g = Grid::line(16, 0.1, 0.0, Boundary::Periodic);
    const Potential dw = double_well();

    // constant state at a zero of f -> zero field
    ScalarField stationary(g);
    std::fill(stationary.v.begin(), stationary.v.end(), 1.0);
    const ScalarField r0 = reaction(stationary, RegularizationParams(1.5, 0.2), dw);
    for (double v : r0.v) CHECK(v == 0.0);

    // p = 2: reaction equals f(u) exactly, independent of eps and Du
    const ScalarField u(g, [](double x) { return 0.5 * std::sin(x); });
    const ScalarField r2 = reaction(u, RegularizationParams(2.0, 0.3), dw);
    for (std::size_t i = 0; i < u.v.size(); ++i) CHECK(r2.v[i] == dw.f(u.v[i]));

    // constant state off the zeros: factor is eps^{2-p}
    ScalarField half(g);
    std::fill(half.v.begin(), half.v.end(), 0.5);
    const ScalarField rc = reaction(half, RegularizationParams(1.5, 0.1), dw);
    const double expect = std::pow(0.1, 0.5) * dw.f(0.5);
    for (double v : rc.v) CHECK(v == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("reaction rejects states outside the admissible range") {
    const Grid g = Grid::line(16, 0.1, 0.0, Boundary::Periodic);
    ScalarField u(g);
    std::fill(u.v.begin(), u.v.end(), 7.0);  // double_well admits [-6, 6]
    CHECK_THROWS_WITH(reaction(u, RegularizationParams(1.5, 0.1), double_well()),
                      "state left admissible range");
}

TEST_CASE("rhs on constants and the heat case") {
    const Grid g = Grid::line(128, 2.0 * std::numbers::pi / 128.0, 0.0, Boundary::Periodic);
    const Potential dw = double_well();

    ScalarField one(g);
    std::fill(one.v.begin(), one.v.end(), 1.0);
    const ScalarField r1 = rhs(one, RegularizationParams(1.7, 0.2), dw);
    for (double v : r1.v) CHECK(v == 0.0);

    // p = 2, f = 0: rhs(sin) ~ -sin within O(h^2)
    const ScalarField u(g, [](double x) { return std::sin(x); });
    const ScalarField r2 = rhs(u, RegularizationParams(2.0, 0.0), zero_potential());
    double err = 0.0;
    for (std::int64_t i = 0; i < g.nx(); ++i)
        err = std::max(err, std::fabs(r2.v[static_cast<std::size_t>(i)] + std::sin(g.x(i))));
    CHECK(err <= g.h * g.h);

    // constant state, p = 2: heat case with constant forcing, rhs = -f(c)
    ScalarField half(g);
    std::fill(half.v.begin(), half.v.end(), 0.5);
    const ScalarField r3 = rhs(half, RegularizationParams(2.0, 0.0), dw);
    for (double v : r3.v) CHECK(v == -dw.f(0.5));
}

TEST_CASE("divergence form consistency") {
    const Grid g = Grid::line(128, 2.0 * std::numbers::pi / 128.0, 0.0, Boundary::Periodic);
    const Potential dw = double_well();

    // affine data wrap discontinuously; use a Dirichlet grid for that case
    const Grid gd = Grid::line(64, 0.1, -3.2, Boundary::DirichletFrame);
    const ScalarField aff(gd, [](double x) { return 0.3 * x; });
    const ConsistencyReport ra =
        divergence_form_consistency(aff, RegularizationParams(1.5, 0.1), dw);
    CHECK(ra.max_discrepancy <= 1e-12);

    const ScalarField u(g, [](double x) { return std::sin(x); });
    const ConsistencyReport r2 = divergence_form_consistency(u, RegularizationParams(2.0, 0.5), dw);
    CHECK(r2.max_discrepancy <= 1e-12);

    const ConsistencyReport r15 =
        divergence_form_consistency(u, RegularizationParams(1.5, 0.1), dw);
    CHECK(r15.ok());

    CHECK_THROWS_WITH(divergence_form_consistency(u, RegularizationParams(1.5, 0.0), dw),
                      "divergence form requires eps > 0");
}

TEST_CASE("nondivergence residual on the standing wave") {
    const Grid g = Grid::line(513, 10.0 / 256.0, -10.0, Boundary::DirichletFrame);
    const ScalarField u(g, [](double x) { return std::tanh(x / std::sqrt(2.0)); });
    const ResidualReport rep =
        nondivergence_residual(u, u, 1.0, RegularizationParams(2.0, 0.0), double_well());
    CHECK(!rep.no_eligible_cells());
    // stencil error bound 5 h^2 scaled by the third-derivative magnitude
    double scale = 0.0;
    for (std::int64_t i = 0; i < g.nx(); ++i) {
        const double uu = std::tanh(g.x(i) / std::sqrt(2.0));
        const double du = (1.0 - uu * uu) / std::sqrt(2.0);
        scale = std::max(scale, std::fabs(du * (3.0 * uu * uu - 1.0)));
    }
    CHECK(rep.max_residual <= 5.0 * g.h * g.h * scale);
}

TEST_CASE("nondivergence residual skips zero-gradient cells") {
    const Grid g = Grid::line(32, 0.1, 0.0, Boundary::Periodic);
    ScalarField u(g);
    std::fill(u.v.begin(), u.v.end(), 0.4);
    const ResidualReport rep =
        nondivergence_residual(u, u, 0.01, RegularizationParams(2.0, 0.0), zero_potential());
    CHECK(rep.no_eligible_cells());
    CHECK(rep.max_residual == 0.0);
}

TEST_CASE("nondivergence residual on the decaying heat mode") {
    const Grid g = Grid::line(128, 2.0 * std::numbers::pi / 128.0, 0.0, Boundary::Periodic);
    const double dt = 1e-3;
    const ScalarField now(g, [](double x) { return std::sin(x); });
    ScalarField next(g);
    for (std::int64_t i = 0; i < g.nx(); ++i)
        next.v[static_cast<std::size_t>(i)] = std::exp(-dt) * std::sin(g.x(i));
    const ResidualReport rep =
        nondivergence_residual(now, next, dt, RegularizationParams(2.0, 0.0), zero_potential());
    CHECK(!rep.no_eligible_cells());
    CHECK(rep.max_residual <= g.h * g.h + dt);
}
