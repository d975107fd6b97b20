#include "modica/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "modica/kernels.hpp"

namespace modica {

double cfl_dt(const Grid& grid, const SimulationParams& params, const Potential& P, double sup_g,
              double sup_dg) {
    if (!(params.cfl_safety > 0.0 && params.cfl_safety <= 1.0))
        throw std::invalid_argument("cfl_safety must lie in (0, 1]");
    const RegularizationParams reg = params.reg();
    const double n = static_cast<double>(grid.dim);
    const double diff_cap = grid.h * grid.h / (2.0 * n * std::max(1.0, params.p - 1.0));

    const double pad = sup_g + 0.2;
    const double lo = std::max(P.lo, -pad);
    const double hi = std::min(P.hi, pad);
    const double lf = max_abs_fprime(P, lo, hi);
    const double factor = std::pow(reg.eps2() + sup_dg * sup_dg, (2.0 - params.p) / 2.0);
    const double react_cap = 1.0 / std::max(1.0, lf * factor);

    return params.cfl_safety * std::min(diff_cap, react_cap);
}

ScalarField step(const ScalarField& u, const SimulationParams& params, const Potential& P,
                 std::size_t* substituted) {
    if (!(params.dt > 0.0)) throw std::invalid_argument("step needs dt > 0");
    const Grid& g = u.grid;
    const RhsFields f = rhs_fields(u, params.reg(), P, SingularPolicy::SubstituteIdentity);
    if (substituted) *substituted += f.substituted;

    ScalarField out = u;  // frame cells keep the datum
    const auto& k = kernels::active();
    const bool periodic = g.boundary == Boundary::Periodic;
    const std::int64_t nx = g.nx();
    const std::int64_t ny = g.ny();
    const std::int64_t y0 = (g.dim == 2 && !periodic) ? 1 : 0;
    const std::int64_t y1 = (g.dim == 2 && !periodic) ? ny - 1 : (g.dim == 2 ? ny : 1);
    const std::int64_t x0 = periodic ? 0 : 1;
    const std::int64_t x1 = periodic ? nx : nx - 1;
    for (std::int64_t iy = y0; iy < y1; ++iy) {
        const std::size_t base = g.index(x0, iy);
        k.update(u.v.data() + base, f.diffusion.v.data() + base, f.reaction.v.data() + base,
                 params.dt, out.v.data() + base, static_cast<std::size_t>(x1 - x0));
    }
    if (!all_finite(out)) throw std::runtime_error("blow-up: reduce dt or check potential range");
    return out;
}

void DiagnosticsSeries::append(const DiagnosticsRecord& r) {
    const double vals[6] = {r.t, r.max_p, r.sup_u, r.sup_du, r.min_f, r.osc};
    for (double v : vals)
        if (!std::isfinite(v)) throw std::runtime_error("non-finite diagnostics entry");
    if (!rows.empty() && !(r.t > rows.back().t))
        throw std::runtime_error("diagnostics times must be strictly increasing");
    rows.push_back(r);
}

std::string DiagnosticsSeries::to_csv() const {
    std::string out = "t,maxP,supU,supDu,minF,osc\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.max_p,
                      r.sup_u, r.sup_du, r.min_f, r.osc);
        out += buf;
    }
    return out;
}

namespace {

DiagnosticsRecord make_record(double t, const ScalarField& u, const SimulationParams& params,
                              const Potential& P) {
    DiagnosticsRecord r;
    r.t = t;
    r.max_p = max_interior(modica_field(u, ModicaProfile(params.p, params.eps), P));
    r.sup_u = sup_norm(u);
    r.sup_du = sup_gradient_interior(u);
    ScalarField fu(u.grid);
    for (std::size_t i = 0; i < u.v.size(); ++i) fu.v[i] = P.F(u.v[i]);
    r.min_f = min_interior(fu);
    r.osc = oscillation(u);
    return r;
}

// Picks the shared step: user-provided dt is validated against the bound,
// otherwise the bound is divided evenly into the horizon.
double resolve_dt(const Grid& grid, const SimulationParams& params, const Potential& P,
                  double sup_g, double sup_dg, std::size_t* steps_out) {
    if (!(params.T > 0.0)) throw std::invalid_argument("T must be positive");
    if (params.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    const double bound = cfl_dt(grid, params, P, sup_g, sup_dg);
    double dt = params.dt;
    if (dt > 0.0) {
        if (dt > bound * (1.0 + 1e-9)) throw std::runtime_error("dt exceeds stability bound");
        if (params.T < dt) throw std::invalid_argument("T must be >= dt");
        *steps_out = static_cast<std::size_t>(std::ceil(params.T / dt - 1e-12));
        return dt;
    }
    const std::size_t n = static_cast<std::size_t>(std::ceil(params.T / bound - 1e-12));
    *steps_out = std::max<std::size_t>(n, 1);
    return params.T / static_cast<double>(*steps_out);
}

void require_admissible(const Potential& P, double sup_g) {
    if (-sup_g - 1.0 < P.lo || sup_g + 1.0 > P.hi)
        throw std::runtime_error("potential not admissible on [-sup|g|-1, sup|g|+1]");
}

}  // namespace

RunResult run(const ScalarField& g, const SimulationParams& params, const Potential& P) {
    if (!all_finite(g)) throw std::invalid_argument("datum has non-finite values");
    const double sup_g = sup_norm(g);
    const double sup_dg = sup_gradient_interior(g);
    require_admissible(P, sup_g);

    RunResult res;
    try {
        const AssumptionCertificate cert = certify_assumption(P, sup_g);
        res.certified = true;
        res.bound_q = cert.q;
    } catch (const std::runtime_error&) {
        res.certified = false;
    }

    std::size_t steps = 0;
    SimulationParams eff = params;
    eff.dt = resolve_dt(g.grid, params, P, sup_g, sup_dg, &steps);
    res.dt = eff.dt;
    res.steps = steps;

    ScalarField u = g;
    res.series.append(make_record(0.0, u, eff, P));
    res.snapshots.push_back({0.0, u});
    res.run_sup_u = res.series.rows.back().sup_u;
    res.run_sup_du = res.series.rows.back().sup_du;

    for (std::size_t i = 1; i <= steps; ++i) {
        u = step(u, eff, P, &res.substituted_cells);
        const double s = sup_norm(u);
        res.run_sup_u = std::max(res.run_sup_u, s);
        if (res.certified && s > res.bound_q + 1e-6) res.sup_bound_ok = false;
        if (i % static_cast<std::size_t>(eff.record_every) == 0 || i == steps) {
            const double t = static_cast<double>(i) * eff.dt;
            res.series.append(make_record(t, u, eff, P));
            res.snapshots.push_back({t, u});
            res.run_sup_du = std::max(res.run_sup_du, res.series.rows.back().sup_du);
        }
    }
    res.final_field = std::move(u);
    return res;
}

PairReport evolve_pair(const ScalarField& g1, const ScalarField& g2,
                       const SimulationParams& params, const Potential& P) {
    if (!(g1.grid == g2.grid)) throw std::invalid_argument("data on different grids");
    const auto& k = kernels::active();

    ScalarField diff(g1.grid);
    k.sub_scale(g1.v.data(), g2.v.data(), 1.0, diff.v.data(), diff.v.size());
    PairReport rep;
    rep.initial_separation = sup_norm(diff);
    if (rep.initial_separation == 0.0) throw std::runtime_error("zero initial separation");

    const double sup_g = std::max(sup_norm(g1), sup_norm(g2));
    const double sup_dg = std::max(sup_gradient_interior(g1), sup_gradient_interior(g2));
    require_admissible(P, sup_g);

    std::size_t steps = 0;
    SimulationParams eff = params;
    eff.dt = resolve_dt(g1.grid, params, P, sup_g, sup_dg, &steps);
    rep.dt = eff.dt;

    double data_lo = std::min(min_value(g1), min_value(g2));
    double data_hi = std::max(max_value(g1), max_value(g2));
    const double lf = max_abs_fprime(P, data_lo, data_hi);

    ScalarField u = g1;
    ScalarField v = g2;
    double sup_du_run = sup_dg;
    rep.times.push_back(0.0);
    rep.ratio.push_back(1.0);
    rep.m_hat = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= steps; ++i) {
        u = step(u, eff, P);
        v = step(v, eff, P);
        if (i % static_cast<std::size_t>(eff.record_every) == 0 || i == steps) {
            const double t = static_cast<double>(i) * eff.dt;
            k.sub_scale(u.v.data(), v.v.data(), 1.0, diff.v.data(), diff.v.size());
            const double r = sup_norm(diff) / rep.initial_separation;
            rep.times.push_back(t);
            rep.ratio.push_back(r);
            if (r > 0.0) rep.m_hat = std::max(rep.m_hat, std::log(r) / t);
            sup_du_run = std::max(sup_du_run,
                                  std::max(sup_gradient_interior(u), sup_gradient_interior(v)));
        }
    }
    const double factor =
        std::pow(eff.reg().eps2() + sup_du_run * sup_du_run, (2.0 - eff.p) / 2.0);
    rep.m_ref = lf * std::max(1.0, factor) + 0.1;
    rep.pass = rep.m_hat <= rep.m_ref;
    return rep;
}

SweepReport epsilon_sweep(const ScalarField& g, const SimulationParams& params,
                          const Potential& P, const std::vector<double>& eps_list) {
    if (eps_list.size() < 2) throw std::invalid_argument("eps sweep needs at least two values");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] >= 0.0 && eps_list[i] <= 1.0))
            throw std::invalid_argument("eps values must lie in [0, 1]");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("eps values must be strictly decreasing");
    }

    // One dt for all runs, from the largest eps (largest reaction factor).
    const double sup_g = sup_norm(g);
    const double sup_dg = sup_gradient_interior(g);
    SimulationParams base = params;
    base.eps = eps_list.front();
    std::size_t steps = 0;
    base.dt = resolve_dt(g.grid, base, P, sup_g, sup_dg, &steps);

    SweepReport rep;
    rep.eps_values = eps_list;
    rep.dt = base.dt;

    std::vector<ScalarField> finals;
    finals.reserve(eps_list.size());
    for (double e : eps_list) {
        SimulationParams run_params = base;
        run_params.eps = e;
        finals.push_back(run(g, run_params, P).final_field);
    }

    const auto& k = kernels::active();
    ScalarField diff(g.grid);
    for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
        k.sub_scale(finals[i].v.data(), finals[i + 1].v.data(), 1.0, diff.v.data(),
                    diff.v.size());
        rep.gaps.push_back(sup_norm(diff));
    }

    bool strict = true;
    for (std::size_t i = 0; i + 1 < rep.gaps.size(); ++i)
        if (!(rep.gaps[i] > rep.gaps[i + 1])) strict = false;
    bool eps_independent = true;
    for (double d : rep.gaps)
        if (d > 1e-12) eps_independent = false;
    rep.pass = strict || eps_independent;
    return rep;
}

}  // namespace modica
