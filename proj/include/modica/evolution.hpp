#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modica/estimate.hpp"
#include "modica/grid.hpp"
#include "modica/operators.hpp"
#include "modica/potential.hpp"

namespace modica {

struct SimulationParams {
    double p = 2.0;
    double eps = 0.0;
    double dt = 0.0;  // <= 0: derive from cfl_dt and divide the horizon evenly
    double T = 1.0;
    double cfl_safety = 0.9;
    std::int64_t record_every = 10;
    RegularizationParams reg() const { return {p, eps}; }
};

// Explicit-step bound: the diffusion update stays a convex combination and
// the reaction increment stays bounded,
//   dt = safety * min( h^2 / (2 n max{1, p-1}),
//                      1 / max(1, L_f (eps^2 + G^2)^{(2-p)/2}) ),
// with L_f = max|f'| over the padded state range [-(M+0.2), M+0.2] and G
// the current gradient sup estimate.
double cfl_dt(const Grid& grid, const SimulationParams& params, const Potential& P, double sup_g,
              double sup_dg);

// One forward Euler step: interior cells get u + dt * rhs(u); frame cells
// hold the datum (periodic grids wrap). Zero-gradient cells at p < 2,
// eps = 0 use the identity diffusion matrix and are counted in
// *substituted. Throws on non-finite output.
ScalarField step(const ScalarField& u, const SimulationParams& params, const Potential& P,
                 std::size_t* substituted = nullptr);

struct DiagnosticsRecord {
    double t;
    double max_p;   // max interior P_eps
    double sup_u;   // sup |u|
    double sup_du;  // max interior |Du|
    double min_f;   // min interior F(u)
    double osc;     // max u - min u
};

struct DiagnosticsSeries {
    std::vector<DiagnosticsRecord> rows;
    void append(const DiagnosticsRecord& r);  // validates finiteness + time order
    std::string to_csv() const;               // header: t,maxP,supU,supDu,minF,osc
};

struct Snapshot {
    double t;
    ScalarField field;
};

struct RunResult {
    ScalarField final_field;
    DiagnosticsSeries series;
    std::vector<Snapshot> snapshots;
    double dt = 0.0;
    std::size_t steps = 0;
    std::size_t substituted_cells = 0;  // zero-gradient identity substitutions, summed
    bool certified = false;             // sign-change certificate obtained
    double bound_q = 0.0;               // certified sup bound when certified
    bool sup_bound_ok = true;           // sup|u| <= q + 1e-6 throughout (when certified)
    double run_sup_u = 0.0;
    double run_sup_du = 0.0;
};

// Steps the datum to t >= T, recording diagnostics and snapshots every
// record_every steps (plus the initial and final states).
RunResult run(const ScalarField& g, const SimulationParams& params, const Potential& P);

struct PairReport {
    std::vector<double> times;
    std::vector<double> ratio;  // ||u - v||_inf(t) / ||g1 - g2||_inf
    double m_hat = 0.0;         // max over recorded t > 0 of log(ratio)/t
    double m_ref = 0.0;         // L_f * max(1, (eps^2+G^2)^{(2-p)/2}) + 0.1
    bool pass = false;          // m_hat <= m_ref
    double initial_separation = 0.0;
    double dt = 0.0;
};

// Evolves both data with a shared time step and measures the contraction
// exponent of the sup-norm distance. Throws on zero initial separation.
PairReport evolve_pair(const ScalarField& g1, const ScalarField& g2,
                       const SimulationParams& params, const Potential& P);

struct SweepReport {
    std::vector<double> eps_values;
    std::vector<double> gaps;  // ||u^{eps_i} - u^{eps_{i+1}}||_inf at T
    bool pass = false;         // strictly decreasing, or all <= 1e-12 (eps-independent)
    double dt = 0.0;
};

// Runs the same datum for each eps on one grid with one dt and reports the
// successive sup-norm gaps at the horizon. eps_list must be strictly
// decreasing with every entry <= 1.
SweepReport epsilon_sweep(const ScalarField& g, const SimulationParams& params,
                          const Potential& P, const std::vector<double>& eps_list);

}  // namespace modica
