#include "modica/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "modica/estimate.hpp"
#include "modica/kernels.hpp"
#include "modica/oracles.hpp"
#include "modica/snapshot.hpp"
#include "modica/threading.hpp"

namespace modica {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_missing(const std::string& key) {
    throw std::runtime_error("config: missing mandatory key '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) fail(line, "invalid number '" + v + "'");
        return x;
    } catch (const std::invalid_argument&) {
        fail(line, "invalid number '" + v + "'");
    } catch (const std::out_of_range&) {
        fail(line, "number out of range '" + v + "'");
    }
}

std::int64_t to_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) fail(line, "invalid integer '" + v + "'");
        return x;
    } catch (const std::exception&) {
        fail(line, "invalid integer '" + v + "'");
    }
}

std::vector<double> to_double_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), line));
    if (out.empty()) fail(line, "expected a comma-separated list");
    return out;
}

struct Entry {
    std::string value;
    int line;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> kv;
    {
        std::stringstream ss(text);
        std::string raw;
        int line = 0;
        while (std::getline(ss, raw)) {
            ++line;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            const std::string stripped = trim(raw);
            if (stripped.empty()) continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) fail(line, "expected 'key = value'");
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty()) fail(line, "empty key");
            if (kv.count(key)) fail(line, "duplicate key '" + key + "'");
            kv.emplace(key, Entry{value, line});
        }
    }

    ExperimentConfig cfg;
    std::map<std::string, bool> seen;
    const auto take = [&](const char* key) -> const Entry* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        seen[key] = true;
        return &it->second;
    };

    if (const Entry* e = take("experiment")) {
        static const std::map<std::string, ExperimentKind> kinds = {
            {"run", ExperimentKind::Run},
            {"pair", ExperimentKind::Pair},
            {"eps-sweep", ExperimentKind::EpsSweep},
            {"verify-estimate", ExperimentKind::VerifyEstimate},
            {"oracle-compare", ExperimentKind::OracleCompare},
            {"zeros", ExperimentKind::Zeros}};
        auto it = kinds.find(e->value);
        if (it == kinds.end()) fail(e->line, "unknown experiment");
        cfg.experiment = it->second;
    } else {
        fail_missing("experiment");
    }

    if (const Entry* e = take("n")) {
        const std::int64_t n = to_int(e->value, e->line);
        if (n != 1 && n != 2) fail(e->line, "n must be 1 or 2");
        cfg.n = static_cast<int>(n);
    } else {
        fail_missing("n");
    }

    if (const Entry* e = take("extent")) {
        const auto ab = to_double_list(e->value, e->line);
        if (ab.size() != 2 || !(ab[0] < ab[1])) fail(e->line, "extent must be 'a,b' with a < b");
        cfg.x0 = ab[0];
        cfg.x1 = ab[1];
    } else {
        fail_missing("extent");
    }

    if (const Entry* e = take("extent_y")) {
        const auto ab = to_double_list(e->value, e->line);
        if (ab.size() != 2 || !(ab[0] < ab[1]))
            fail(e->line, "extent_y must be 'a,b' with a < b");
        cfg.y0 = ab[0];
        cfg.y1 = ab[1];
        cfg.has_extent_y = true;
        if (cfg.n != 2) fail(e->line, "extent_y requires n = 2");
    } else if (cfg.n == 2) {
        fail_missing("extent_y");
    }

    if (const Entry* e = take("h")) {
        cfg.h = to_double(e->value, e->line);
        if (!(cfg.h > 0.0)) fail(e->line, "h must be positive");
    } else {
        fail_missing("h");
    }

    if (const Entry* e = take("boundary")) {
        if (e->value == "periodic")
            cfg.boundary = Boundary::Periodic;
        else if (e->value == "dirichlet")
            cfg.boundary = Boundary::DirichletFrame;
        else
            fail(e->line, "boundary must be periodic or dirichlet");
    } else {
        fail_missing("boundary");
    }

    if (const Entry* e = take("p")) {
        cfg.params.p = to_double(e->value, e->line);
        if (!(cfg.params.p > 1.0 && cfg.params.p <= 2.0)) fail(e->line, "p must lie in (1, 2]");
    } else {
        fail_missing("p");
    }

    if (const Entry* e = take("eps")) {
        cfg.params.eps = to_double(e->value, e->line);
        if (!(cfg.params.eps >= 0.0)) fail(e->line, "eps must be >= 0");
    }

    if (const Entry* e = take("T")) {
        cfg.params.T = to_double(e->value, e->line);
        if (!(cfg.params.T > 0.0)) fail(e->line, "T must be positive");
    }
    const bool needs_horizon =
        cfg.experiment == ExperimentKind::Run || cfg.experiment == ExperimentKind::Pair ||
        cfg.experiment == ExperimentKind::EpsSweep || cfg.experiment == ExperimentKind::Zeros;
    if (needs_horizon && !seen["T"]) fail_missing("T");

    if (const Entry* e = take("cfl_safety")) {
        cfg.params.cfl_safety = to_double(e->value, e->line);
        if (!(cfg.params.cfl_safety > 0.0 && cfg.params.cfl_safety <= 1.0))
            fail(e->line, "cfl_safety must lie in (0, 1]");
    }

    if (const Entry* e = take("record_every")) {
        const std::int64_t r = to_int(e->value, e->line);
        if (r < 1) fail(e->line, "record_every must be >= 1");
        cfg.params.record_every = r;
    }

    if (const Entry* e = take("potential")) {
        if (e->value != "double_well" && e->value != "sine" && e->value.rfind("poly:", 0) != 0)
            fail(e->line, "potential must be double_well, sine or poly:c0,c1,...");
        cfg.potential_spec = e->value;
    } else {
        fail_missing("potential");
    }

    const auto validate_datum = [&](const Entry* e) {
        const std::string& v = e->value;
        const bool ok = v.rfind("constant:", 0) == 0 || v.rfind("sine:", 0) == 0 ||
                        v == "tanh-wave" || v.rfind("modica-profile:", 0) == 0 ||
                        v.rfind("file:", 0) == 0;
        if (!ok) fail(e->line, "unknown initial datum '" + v + "'");
    };
    if (const Entry* e = take("initial")) {
        validate_datum(e);
        cfg.initial_spec = e->value;
    } else {
        fail_missing("initial");
    }
    if (const Entry* e = take("initial2")) {
        validate_datum(e);
        cfg.initial2_spec = e->value;
    } else if (cfg.experiment == ExperimentKind::Pair) {
        fail_missing("initial2");
    }

    if (const Entry* e = take("eps_list")) {
        cfg.eps_list = to_double_list(e->value, e->line);
        for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
            if (!(cfg.eps_list[i] >= 0.0 && cfg.eps_list[i] <= 1.0))
                fail(e->line, "eps_list values must lie in [0, 1]");
            if (i > 0 && !(cfg.eps_list[i] < cfg.eps_list[i - 1]))
                fail(e->line, "eps_list must be strictly decreasing");
        }
    } else if (cfg.experiment == ExperimentKind::EpsSweep) {
        fail_missing("eps_list");
    }

    if (const Entry* e = take("mollify_radius")) {
        cfg.mollify_radius = to_double(e->value, e->line);
        if (!(cfg.mollify_radius > 0.0)) fail(e->line, "mollify_radius must be positive");
    }
    if (const Entry* e = take("maxP_tol")) {
        cfg.max_p_tol = to_double(e->value, e->line);
        if (!(cfg.max_p_tol > 0.0)) fail(e->line, "maxP_tol must be positive");
    }
    if (const Entry* e = take("estimate_tol")) {
        cfg.estimate_tol = to_double(e->value, e->line);
        if (!(cfg.estimate_tol > 0.0)) fail(e->line, "estimate_tol must be positive");
    }
    if (const Entry* e = take("out")) cfg.out_dir = e->value;

    for (const auto& [key, entry] : kv)
        if (!seen[key]) fail(entry.line, "unknown key '" + key + "'");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Grid build_grid(const ExperimentConfig& cfg) {
    const auto axis_cells = [&](double a, double b) {
        const double span = b - a;
        const double intervals = span / cfg.h;
        const std::int64_t n = static_cast<std::int64_t>(std::llround(intervals));
        if (std::fabs(static_cast<double>(n) * cfg.h - span) > 1e-6 * std::max(1.0, span))
            throw std::runtime_error("extent is not an integer multiple of h");
        return cfg.boundary == Boundary::Periodic ? n : n + 1;
    };
    if (cfg.n == 1) return Grid::line(axis_cells(cfg.x0, cfg.x1), cfg.h, cfg.x0, cfg.boundary);
    return Grid::plane(axis_cells(cfg.x0, cfg.x1), axis_cells(cfg.y0, cfg.y1), cfg.h, cfg.x0,
                       cfg.y0, cfg.boundary);
}

Potential build_potential(const std::string& spec) {
    if (spec == "double_well") return double_well();
    if (spec == "sine") return sine_potential();
    if (spec.rfind("poly:", 0) == 0) {
        std::vector<double> coeffs;
        std::stringstream ss(spec.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) coeffs.push_back(std::stod(item));
        return poly_potential(coeffs);
    }
    throw std::runtime_error("unknown potential '" + spec + "'");
}

ScalarField build_datum(const std::string& spec, const Grid& grid, const ExperimentConfig& cfg) {
    const auto xs = [&]() {
        std::vector<double> v(static_cast<std::size_t>(grid.nx()));
        for (std::int64_t i = 0; i < grid.nx(); ++i) v[static_cast<std::size_t>(i)] = grid.x(i);
        return v;
    };
    const auto from_profile = [&](const Profile1D& prof) {
        ScalarField f(grid);
        for (std::int64_t iy = 0; iy < grid.ny(); ++iy)
            for (std::int64_t ix = 0; ix < grid.nx(); ++ix)
                f.v[grid.index(ix, iy)] = prof.u[static_cast<std::size_t>(ix)];
        return f;
    };

    if (spec.rfind("constant:", 0) == 0) {
        const double c = std::stod(spec.substr(9));
        ScalarField f(grid);
        std::fill(f.v.begin(), f.v.end(), c);
        return f;
    }
    if (spec.rfind("sine:", 0) == 0) {
        const double k = std::stod(spec.substr(5));
        if (grid.dim == 1)
            return ScalarField(grid, [k](double x) { return std::sin(k * x); });
        return ScalarField(grid,
                           [k](double x, double y) { return std::sin(k * x) * std::sin(k * y); });
    }
    if (spec == "tanh-wave") {
        const auto x = xs();
        return from_profile(tanh_wave(x));
    }
    if (spec.rfind("modica-profile:", 0) == 0) {
        const double u0 = std::stod(spec.substr(15));
        const Potential pot = build_potential(cfg.potential_spec);
        const auto x = xs();
        return from_profile(modica_profile(cfg.params.p, pot, u0, x));
    }
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        const SnapshotData snap = read_plmf(path);
        if (static_cast<int>(snap.dim) != grid.dim)
            throw std::runtime_error("snapshot dimension mismatch: " + path);
        const std::uint64_t want_x = static_cast<std::uint64_t>(grid.nx());
        const std::uint64_t want_y = static_cast<std::uint64_t>(grid.ny());
        if (snap.cells[0] != want_x || (grid.dim == 2 && snap.cells[1] != want_y))
            throw std::runtime_error("snapshot cell count mismatch: " + path);
        if (std::fabs(snap.h - grid.h) > 1e-9 * grid.h)
            throw std::runtime_error("snapshot spacing mismatch: " + path);
        ScalarField f(grid);
        f.v = snap.values;
        return f;
    }
    throw std::runtime_error("unknown initial datum '" + spec + "'");
}

namespace {

struct Assertion {
    std::string name;
    double measured;
    double threshold;
    bool pass;
};

struct Report {
    std::vector<std::string> info;
    std::vector<Assertion> checks;
    void note(const std::string& s) { info.push_back(s); }
    void check(const std::string& name, double measured, double threshold, bool pass) {
        checks.push_back({name, measured, threshold, pass});
    }
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Assertion& a) { return a.pass; });
    }
};

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_report(const std::filesystem::path& dir, const Report& rep) {
    std::string text;
    char buf[256];
    for (const auto& line : rep.info) text += "# " + line + "\n";
    for (const auto& a : rep.checks) {
        std::snprintf(buf, sizeof(buf), "%s: measured=%.12g threshold=%.12g %s\n",
                      a.name.c_str(), a.measured, a.threshold, a.pass ? "PASS" : "FAIL");
        text += buf;
    }
    write_text(dir / "report.txt", text);
}

void write_run_artifacts(const std::filesystem::path& dir, const RunResult& res) {
    write_text(dir / "diagnostics.csv", res.series.to_csv());
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "snap_%06zu.plmf", i);
        write_plmf((dir / name).string(), res.snapshots[i].field, res.snapshots[i].t);
    }
}

double max_recorded_p(const DiagnosticsSeries& series) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& r : series.rows) m = std::max(m, r.max_p);
    return m;
}

}  // namespace

int dispatch(const ExperimentConfig& cfg) {
    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);

    const Grid grid = build_grid(cfg);
    const Potential pot = build_potential(cfg.potential_spec);
    const NonnegReport nn = nonneg_report(pot, pot.lo, pot.hi);
    if (nn.flagged)
        throw std::runtime_error("potential fails nonnegativity on its admissible range");

    static const char* kind_names[] = {"run",            "pair",           "eps-sweep",
                                       "verify-estimate", "oracle-compare", "zeros"};
    Report rep;
    rep.note(std::string(kind_names[static_cast<int>(cfg.experiment)]) + " with " +
             cfg.initial_spec + " on " + std::to_string(grid.nx()) +
             (grid.dim == 2 ? "x" + std::to_string(grid.ny()) : "") + " cells, h=" +
             std::to_string(grid.h));
    rep.note("p=" + std::to_string(cfg.params.p) + " eps=" + std::to_string(cfg.params.eps));
    rep.note("simd=" + kernels::isa_name(kernels::active_isa()));

    const double est_tol_default = 5.0 * grid.h * grid.h;

    switch (cfg.experiment) {
        case ExperimentKind::Run: {
            const ScalarField g = build_datum(cfg.initial_spec, grid, cfg);
            const EstimateReport est = check_initial_estimate(g, cfg.params.p, pot);
            const bool est_ok = est.satisfied(std::max(1e-10, est_tol_default));
            const RunResult res = run(g, cfg.params, pot);
            write_run_artifacts(dir, res);
            rep.note("dt=" + std::to_string(res.dt) + " steps=" + std::to_string(res.steps));
            rep.note("zero-gradient identity substitutions: " +
                     std::to_string(res.substituted_cells));
            if (res.certified)
                rep.check("sup_bound", res.run_sup_u, res.bound_q + 1e-6, res.sup_bound_ok);
            else
                rep.note("sign-change certificate unavailable; sup bound not asserted");
            if (est_ok)
                rep.check("max_interior_P", max_recorded_p(res.series), cfg.max_p_tol,
                          max_recorded_p(res.series) <= cfg.max_p_tol);
            else
                rep.note("datum does not satisfy the gradient estimate; P monitor informational");
            break;
        }
        case ExperimentKind::Pair: {
            const ScalarField g1 = build_datum(cfg.initial_spec, grid, cfg);
            const ScalarField g2 = build_datum(cfg.initial2_spec, grid, cfg);
            const PairReport pr = evolve_pair(g1, g2, cfg.params, pot);
            std::string csv = "t,r\n";
            char buf[128];
            for (std::size_t i = 0; i < pr.times.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", pr.times[i], pr.ratio[i]);
                csv += buf;
            }
            write_text(dir / "pair.csv", csv);
            rep.note("initial separation " + std::to_string(pr.initial_separation));
            rep.check("contraction_exponent", pr.m_hat, pr.m_ref, pr.pass);
            const double lf = max_abs_fprime(pot, std::min(min_value(g1), min_value(g2)),
                                             std::max(max_value(g1), max_value(g2)));
            if (lf == 0.0) {
                const double max_r = *std::max_element(pr.ratio.begin(), pr.ratio.end());
                rep.check("nonexpansive_ratio", max_r, 1.0 + 1e-9, max_r <= 1.0 + 1e-9);
            }
            break;
        }
        case ExperimentKind::EpsSweep: {
            const ScalarField g = build_datum(cfg.initial_spec, grid, cfg);
            const SweepReport sw = epsilon_sweep(g, cfg.params, pot, cfg.eps_list);
            std::string csv = "eps_hi,eps_lo,gap\n";
            char buf[160];
            for (std::size_t i = 0; i < sw.gaps.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", sw.eps_values[i],
                              sw.eps_values[i + 1], sw.gaps[i]);
                csv += buf;
            }
            write_text(dir / "sweep.csv", csv);
            double worst_increase = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i + 1 < sw.gaps.size(); ++i)
                worst_increase = std::max(worst_increase, sw.gaps[i + 1] - sw.gaps[i]);
            if (sw.gaps.size() < 2) worst_increase = 0.0;
            rep.check("sweep_gaps_decreasing", worst_increase, 0.0, sw.pass);
            break;
        }
        case ExperimentKind::VerifyEstimate: {
            const ScalarField g = build_datum(cfg.initial_spec, grid, cfg);
            const EstimateReport est = check_initial_estimate(g, cfg.params.p, pot);
            const double tol = cfg.estimate_tol > 0.0 ? cfg.estimate_tol : est_tol_default;
            rep.check("estimate_excess", est.max_excess, tol, est.max_excess <= tol);
            break;
        }
        case ExperimentKind::OracleCompare: {
            const ScalarField g = build_datum(cfg.initial_spec, grid, cfg);
            const double radius = cfg.mollify_radius > 0.0 ? cfg.mollify_radius : 5.0 * grid.h;

            const ScalarField a = mollify(g, radius);
            const ScalarField b = brute_mollify(g, radius);
            double max_diff = 0.0;
            for (std::size_t i = 0; i < a.v.size(); ++i)
                max_diff = std::max(max_diff, std::fabs(a.v[i] - b.v[i]));
            rep.check("mollify_bitwise", max_diff, 0.0, max_diff == 0.0);

            const double sup_g = sup_norm(g);
            const double sup_gk = sup_norm(a);
            rep.check("mollify_sup", sup_gk, sup_g * (1.0 + 1e-10),
                      sup_gk <= sup_g * (1.0 + 1e-10));
            const double sup_dg = sup_gradient(g);
            const double sup_dgk = sup_gradient(a);
            rep.check("mollify_gradient_sup", sup_dgk, sup_dg * (1.0 + 1e-10),
                      sup_dgk <= sup_dg * (1.0 + 1e-10));

            const JensenReport jr = jensen_report(g, cfg.params.p, radius);
            rep.check("jensen_violation", jr.worst_violation, 1e-10, jr.ok());

            if (grid.dim == 1 && (cfg.initial_spec.rfind("modica-profile:", 0) == 0 ||
                                  cfg.initial_spec == "tanh-wave")) {
                std::vector<double> x(static_cast<std::size_t>(grid.nx()));
                for (std::int64_t i = 0; i < grid.nx(); ++i)
                    x[static_cast<std::size_t>(i)] = grid.x(i);
                Profile1D prof;
                if (cfg.initial_spec == "tanh-wave") {
                    prof = tanh_wave(x);
                } else {
                    const double u0 = std::stod(cfg.initial_spec.substr(15));
                    prof = modica_profile(cfg.params.p, pot, u0, x);
                }
                write_text(dir / "profile.csv", profile_csv(prof));
                if (cfg.initial_spec != "tanh-wave" || cfg.params.p == 2.0) {
                    double resid = 0.0;
                    const double c = (cfg.params.p - 1.0) / cfg.params.p;
                    for (std::size_t i = 0; i < prof.u.size(); ++i)
                        resid = std::max(resid,
                                         std::fabs(c * std::pow(std::fabs(prof.du[i]),
                                                                cfg.params.p) -
                                                   pot.F(prof.u[i])));
                    rep.check("profile_equality_residual", resid, 1e-8, resid <= 1e-8);
                }
                if (cfg.params.p == 2.0 && cfg.potential_spec == "double_well" &&
                    cfg.initial_spec.rfind("modica-profile:", 0) == 0) {
                    const Profile1D tw = tanh_wave(x);
                    double dev = 0.0;
                    for (std::size_t i = 0; i < tw.u.size(); ++i)
                        dev = std::max(dev, std::fabs(tw.u[i] - prof.u[i]));
                    rep.check("profile_vs_tanh", dev, 1e-7, dev <= 1e-7);
                }
            }
            break;
        }
        case ExperimentKind::Zeros: {
            const ScalarField g = build_datum(cfg.initial_spec, grid, cfg);
            const ZerosReport zr = zeros_experiment(g, cfg.params, pot);
            if (zr.status == ZerosReport::Status::BoundaryCaseExcluded) {
                rep.note("boundary case, excluded: " + zr.detail);
                write_report(dir, rep);
                return 0;
            }
            const RunResult res = run(g, cfg.params, pot);
            write_run_artifacts(dir, res);
            const bool margin_ok = zr.constant_branch_only || zr.margin > 0.0;
            rep.check("zeros_margin", zr.margin, 0.0,
                      margin_ok && zr.status != ZerosReport::Status::Fail);
            rep.check("ode_bound_excess", zr.worst_ode_excess, 0.0, zr.worst_ode_excess <= 0.0);
            rep.note("ode bound cells checked: " + std::to_string(zr.ode_cells_checked));
            break;
        }
    }

    write_report(dir, rep);
    return rep.all_pass() ? 0 : 1;
}

int run_cli(int argc, char** argv) {
    std::string config_path;
    std::string out_dir;
    long threads = 0;

    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--out") {
            if (i + 1 >= args.size()) {
                std::cerr << "error: --out needs a directory\n";
                return 2;
            }
            out_dir = args[++i];
        } else if (a == "--threads") {
            if (i + 1 >= args.size()) {
                std::cerr << "error: --threads needs a count\n";
                return 2;
            }
            threads = std::strtol(args[++i].c_str(), nullptr, 10);
        } else if (a == "-h" || a == "--help") {
            std::cout << "usage: modica-lab <config-path> [--out <dir>] [--threads <k>]\n";
            return 0;
        } else if (!a.empty() && a[0] == '-') {
            std::cerr << "error: unknown option " << a << "\n";
            return 2;
        } else if (config_path.empty()) {
            config_path = a;
        } else {
            std::cerr << "error: unexpected argument " << a << "\n";
            return 2;
        }
    }
    if (config_path.empty()) {
        std::cerr << "usage: modica-lab <config-path> [--out <dir>] [--threads <k>]\n";
        return 2;
    }

    try {
        if (const char* env = std::getenv("MODICA_THREADS")) threads = std::strtol(env, nullptr, 10);
        if (threads > 0) set_thread_count(static_cast<int>(threads));
        ExperimentConfig cfg = parse_config_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return dispatch(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace modica
