// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Each criterion pins its tolerances in code.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modica/estimate.hpp"
#include "modica/evolution.hpp"
#include "modica/grid.hpp"
#include "modica/operators.hpp"
#include "modica/oracles.hpp"
#include "modica/potential.hpp"

using namespace modica;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

ScalarField field_from_profile(const Grid& g, const Profile1D& prof) {
    ScalarField f(g);
    for (std::int64_t i = 0; i < g.nx(); ++i)
        f.v[static_cast<std::size_t>(i)] = prof.u[static_cast<std::size_t>(i)];
    return f;
}

std::vector<double> grid_coords(const Grid& g) {
    std::vector<double> xs(static_cast<std::size_t>(g.nx()));
    for (std::int64_t i = 0; i < g.nx(); ++i) xs[static_cast<std::size_t>(i)] = g.x(i);
    return xs;
}

double max_recorded_p(const RunResult& res) {
    double m = -1e300;
    for (const auto& r : res.series.rows) m = std::max(m, r.max_p);
    return m;
}

// 1. Gradient-estimate preservation along the flow: max interior P stays
//    below 1e-2 and its positive part at least halves when h halves.
Outcome criterion_modica_preservation() {
    Outcome out;
    std::ostringstream detail;
    const Potential dw = double_well();
    const std::array<std::pair<double, double>, 3> cases{
        {{2.0, 0.0}, {2.0, 0.05}, {1.5, 0.05}}};
    for (const auto& [p, eps] : cases) {
        double pos[2];
        double max_p_coarse = 0.0;
        for (int level = 0; level < 2; ++level) {
            const std::int64_t intervals = level == 0 ? 512 : 1024;
            const Grid g = Grid::line(intervals + 1, 20.0 / static_cast<double>(intervals),
                                      -10.0, Boundary::DirichletFrame);
            const Profile1D prof = modica_profile(p, dw, 0.0, grid_coords(g));
            SimulationParams sp;
            sp.p = p;
            sp.eps = eps;
            sp.T = 1.0;
            sp.record_every = 50;
            const RunResult res = run(field_from_profile(g, prof), sp, dw);
            const double mp = max_recorded_p(res);
            pos[level] = std::max(0.0, mp);
            if (level == 0) max_p_coarse = mp;
        }
        const bool tol_ok = max_p_coarse <= 1e-2;
        const bool shrink_ok = pos[0] <= 1e-12 ? pos[1] <= 1e-12 : pos[1] <= pos[0] / 2.0;
        out.pass = out.pass && tol_ok && shrink_ok;
        detail << " (p=" << p << ",eps=" << eps << "): maxP=" << max_p_coarse
               << " pos(h)=" << pos[0] << " pos(h/2)=" << pos[1] << ";";
    }
    out.detail = detail.str();
    return out;
}

// 2. Lambda equals the derivative of xi to 1e-6 relative and stays positive.
Outcome criterion_lambda_xi() {
    Outcome out;
    double worst = 0.0;
    for (double p : {1.1, 1.5, 2.0}) {
        for (double eps : {0.0, 0.1}) {
            const ModicaProfile prof(p, eps);
            for (int i = 0; i < 60; ++i) {
                const double s = std::pow(10.0, -6.0 + 9.0 * static_cast<double>(i) / 59.0);
                const double ds = 1e-6 * (prof.eps2() + s);  // step at the scale of xi's argument
                const double fd = (xi(s + ds, prof) - xi(s - ds, prof)) / (2.0 * ds);
                const double lam = lambda(s, prof);
                if (!(lam > 0.0)) out.pass = false;
                worst = std::max(worst, std::fabs(fd - lam) / std::fabs(lam));
            }
        }
    }
    out.pass = out.pass && worst <= 1e-6;
    std::ostringstream detail;
    detail << " worst relative error " << worst << " (tol 1e-6)";
    out.detail = detail.str();
    return out;
}

// 3. Uniform ellipticity of the regularized coefficients.
Outcome criterion_ellipticity() {
    Outcome out;
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst = 0.0;
    for (double p : {1.1, 1.5, 2.0}) {
        for (double eps : {0.0, 0.1}) {
            const RegularizationParams params(p, eps);
            const double lo = std::min(1.0, p - 1.0);
            const double hi = std::max(1.0, p - 1.0);
            for (int trial = 0; trial < 1000; ++trial) {
                const std::array<double, 2> sigma{dist(rng), dist(rng)};
                const std::array<double, 2> xi_dir{dist(rng), dist(rng)};
                const double n2 = xi_dir[0] * xi_dir[0] + xi_dir[1] * xi_dir[1];
                const double q = diffusion_coefficients(sigma, params).quad(xi_dir);
                worst = std::max(worst, lo * n2 - q);
                worst = std::max(worst, q - hi * n2);
            }
        }
    }
    out.pass = worst <= 1e-12;
    std::ostringstream detail;
    detail << " worst bound violation " << worst << " (tol 1e-12)";
    out.detail = detail.str();
    return out;
}

// 4. p = 2, f = 0 reduces to the heat equation; compare against the
//    spectral decay oracle and check second-order convergence.
Outcome criterion_heat_limit() {
    Outcome out;
    const auto heat_error = [](std::int64_t n) {
        const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
        const Grid g = Grid::line(n, h, 0.0, Boundary::Periodic);
        const ScalarField u(g, [](double x) { return std::sin(x); });
        SimulationParams sp;
        sp.p = 2.0;
        sp.eps = 0.0;
        sp.T = 0.5;
        sp.record_every = 1000000000;
        const RunResult res = run(u, sp, zero_potential());
        const double amp = spectral_decay(1, 0.5);
        double err = 0.0;
        for (std::int64_t i = 0; i < n; ++i)
            err = std::max(err, std::fabs(res.final_field.v[static_cast<std::size_t>(i)] -
                                          amp * std::sin(g.x(i))));
        return err;
    };
    const double e128 = heat_error(128);
    const double e256 = heat_error(256);
    const double ratio = e128 / e256;
    out.pass = e128 <= 1e-3 && ratio >= 3.5 && ratio <= 4.5;
    std::ostringstream detail;
    detail << " error(h)=" << e128 << " (tol 1e-3), ratio=" << ratio << " (in [3.5,4.5])";
    out.detail = detail.str();
    return out;
}

// 5. The standing wave is stationary up to discretization error.
Outcome criterion_standing_wave() {
    Outcome out;
    const Grid g = Grid::line(513, 20.0 / 512.0, -10.0, Boundary::DirichletFrame);
    const ScalarField tw(g, [](double x) { return std::tanh(x / std::sqrt(2.0)); });
    SimulationParams sp;
    sp.p = 2.0;
    sp.eps = 0.0;
    sp.T = 1.0;
    sp.record_every = 200;
    const RunResult res = run(tw, sp, double_well());
    double drift = 0.0;
    for (std::size_t i = 0; i < tw.v.size(); ++i)
        drift = std::max(drift, std::fabs(res.final_field.v[i] - tw.v[i]));
    out.pass = drift <= 5e-3;
    std::ostringstream detail;
    detail << " drift " << drift << " (tol 5e-3)";
    out.detail = detail.str();
    return out;
}

// 6. Sup-norm contraction exponent for a perturbed pair, plus the pure-heat
//    non-expansive sub-case.
Outcome criterion_contraction() {
    Outcome out;
    const std::int64_t n = 128;
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    const Grid g = Grid::line(n, h, 0.0, Boundary::Periodic);
    const ScalarField g1(g, [](double x) { return 0.999 * std::sin(x); });
    ScalarField g2(g);
    for (std::int64_t i = 0; i < n; ++i)
        g2.v[static_cast<std::size_t>(i)] =
            0.999 * std::sin(g.x(i)) + 1e-3 * std::cos(g.x(i));
    SimulationParams sp;
    sp.p = 2.0;
    sp.eps = 0.0;
    sp.T = 1.0;
    sp.record_every = 20;

    const PairReport dw = evolve_pair(g1, g2, sp, double_well());
    const bool exponent_ok = dw.m_hat <= 2.2 && dw.pass;

    const PairReport heat = evolve_pair(g1, g2, sp, zero_potential());
    double max_ratio = 0.0;
    for (double r : heat.ratio) max_ratio = std::max(max_ratio, r);
    const bool heat_ok = max_ratio <= 1.0;

    out.pass = exponent_ok && heat_ok;
    std::ostringstream detail;
    detail << " m_hat=" << dw.m_hat << " (tol 2.2, ref " << dw.m_ref
           << "); heat max ratio=" << max_ratio << " (tol 1)";
    out.detail = detail.str();
    return out;
}

// 7. Mollification bounds on the triangle wave, and the brute-force
//    convolution oracle agrees bit for bit.
Outcome criterion_mollification() {
    Outcome out;
    const Grid g = Grid::line(128, 4.0 / 128.0, 0.0, Boundary::Periodic);
    const double L = 4.0;
    const ScalarField tri(g, [L](double x) { return std::fabs(x - L / 2.0) - L / 4.0; });
    const double base_grad = sup_gradient(tri);
    std::ostringstream detail;
    for (double factor : {2.0, 5.0, 10.0}) {
        const double radius = factor * g.h;
        const ScalarField smooth = mollify(tri, radius);
        const double grad = sup_gradient(smooth);
        const bool grad_ok = grad <= base_grad * (1.0 + 1e-10);

        const JensenReport jr = jensen_report(tri, 1.5, radius);
        const ScalarField brute = brute_mollify(tri, radius);
        const bool bitwise = smooth.v == brute.v;

        out.pass = out.pass && grad_ok && jr.ok() && bitwise;
        detail << " r=" << factor << "h: grad=" << grad << " jensen=" << jr.worst_violation
               << " bitwise=" << (bitwise ? "yes" : "no") << ";";
    }
    out.detail = detail.str();
    return out;
}

// 8. Propagation of zeros, contrapositive: constants at a well stay put,
//    and the non-constant standing wave never reaches F = 0.
Outcome criterion_zeros() {
    Outcome out;
    std::ostringstream detail;

    const Grid gc = Grid::line(64, 0.1, 0.0, Boundary::Periodic);
    ScalarField one(gc);
    std::fill(one.v.begin(), one.v.end(), 1.0);
    SimulationParams sp_const;
    sp_const.p = 2.0;
    sp_const.eps = 0.0;
    sp_const.record_every = 100;
    sp_const.dt = cfl_dt(gc, sp_const, double_well(), 1.0, 0.0);
    sp_const.T = 1000.0 * sp_const.dt;
    const RunResult res = run(one, sp_const, double_well());
    double drift = 0.0;
    for (double v : res.final_field.v) drift = std::max(drift, std::fabs(v - 1.0));
    const bool const_ok = res.steps == 1000 && drift <= 1e-12;
    detail << " constant drift over 1e3 steps " << drift << " (tol 1e-12);";

    const Grid g = Grid::line(513, 20.0 / 512.0, -10.0, Boundary::DirichletFrame);
    const ScalarField tw(g, [](double x) { return std::tanh(x / std::sqrt(2.0)); });
    SimulationParams sp;
    sp.p = 2.0;
    sp.eps = 0.0;
    sp.T = 1.0;
    sp.record_every = 100;
    const ZerosReport zr = zeros_experiment(tw, sp, double_well());
    const bool tanh_ok = zr.status == ZerosReport::Status::Pass && zr.margin > 0.0;
    detail << " tanh margin min F=" << zr.margin << " (> 0), ode excess="
           << zr.worst_ode_excess;

    out.pass = const_ok && tanh_ok;
    out.detail = detail.str();
    return out;
}

// 9. Cauchy-in-eps behavior of the regularized runs; eps drops out at p = 2.
Outcome criterion_eps_limit() {
    Outcome out;
    const Grid g = Grid::line(257, 20.0 / 256.0, -10.0, Boundary::DirichletFrame);
    ScalarField tw(g);
    for (std::int64_t i = 0; i < g.nx(); ++i)
        tw.v[static_cast<std::size_t>(i)] = std::tanh(g.x(i) / std::sqrt(2.0));
    const std::vector<double> eps_list{0.2, 0.1, 0.05};

    SimulationParams sp;
    sp.p = 1.5;
    sp.T = 1.0;
    sp.record_every = 100;
    const SweepReport sw = epsilon_sweep(tw, sp, double_well(), eps_list);
    const bool decreasing = sw.pass && sw.gaps.size() == 2 && sw.gaps[0] > sw.gaps[1] &&
                            sw.gaps[1] > 0.0;

    sp.p = 2.0;
    const SweepReport sw2 = epsilon_sweep(tw, sp, double_well(), eps_list);
    double worst = 0.0;
    for (double d : sw2.gaps) worst = std::max(worst, d);
    const bool independent = worst <= 1e-12;

    out.pass = decreasing && independent;
    std::ostringstream detail;
    detail << " p=1.5 gaps " << sw.gaps[0] << " > " << sw.gaps[1]
           << " > 0; p=2 max gap " << worst << " (tol 1e-12)";
    out.detail = detail.str();
    return out;
}

struct Criterion {
    const char* name;
    Outcome (*fn)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"modica preservation", criterion_modica_preservation},
        {"lambda-xi consistency", criterion_lambda_xi},
        {"uniform ellipticity", criterion_ellipticity},
        {"heat-limit oracle", criterion_heat_limit},
        {"stationary standing wave", criterion_standing_wave},
        {"maximum-modulus contraction", criterion_contraction},
        {"mollification bounds", criterion_mollification},
        {"propagation of zeros", criterion_zeros},
        {"eps-limit behavior", criterion_eps_limit},
    };

    int failures = 0;
    int id = 0;
    for (const Criterion& c : criteria) {
        ++id;
        const double t0 = now_seconds();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string(" exception: ") + e.what();
        }
        const double dt = now_seconds() - t0;
        std::printf("[%s] criterion %d (%s):%s (%.1fs)\n", out.pass ? "PASS" : "FAIL", id,
                    c.name, out.detail.c_str(), dt);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures == 0)
        std::printf("all %d criteria passed\n", id);
    else
        std::printf("%d of %d criteria FAILED\n", failures, id);
    return failures;
}
