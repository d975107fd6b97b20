#pragma once

#include <string>
#include <vector>

#include "modica/evolution.hpp"
#include "modica/grid.hpp"
#include "modica/potential.hpp"

namespace modica {

enum class ExperimentKind { Run, Pair, EpsSweep, VerifyEstimate, OracleCompare, Zeros };

// Parsed `key = value` experiment description. Unknown keys, out-of-range
// values and missing mandatory keys are rejected with the offending line.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Run;
    int n = 1;
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
    bool has_extent_y = false;
    double h = 0.0;
    Boundary boundary = Boundary::Periodic;
    SimulationParams params;  // dt resolved at run time
    std::string potential_spec;
    std::string initial_spec;
    std::string initial2_spec;     // pair
    std::vector<double> eps_list;  // eps-sweep
    double mollify_radius = 0.0;   // 0: default 5h (oracle-compare)
    double max_p_tol = 1e-2;       // run: bound on max interior P for estimate-passing data
    double estimate_tol = 0.0;     // 0: default 5h^2 (verify-estimate)
    std::string out_dir = ".";
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

Grid build_grid(const ExperimentConfig& cfg);
Potential build_potential(const std::string& spec);
ScalarField build_datum(const std::string& spec, const Grid& grid, const ExperimentConfig& cfg);

// Runs the configured experiment and writes diagnostics.csv, *.plmf
// snapshots and report.txt (one line per assertion with the measured value
// and threshold) into out_dir. Returns 0 iff every assertion passed.
int dispatch(const ExperimentConfig& cfg);

// `<binary> <config-path> [--out <dir>] [--threads <k>]`.
// MODICA_THREADS overrides --threads.
int run_cli(int argc, char** argv);

}  // namespace modica
