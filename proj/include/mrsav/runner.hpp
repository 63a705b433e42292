#pragma once

#include <string>
#include <vector>

#include "mrsav/config.hpp"
#include "mrsav/diagnostics.hpp"

namespace mrsav {

struct SimulationResult {
    bool diverged = false;
    std::int64_t divergence_step = -1;
    double divergence_time = 0.0;
    std::string series_path;
    std::string final_checkpoint_path;
};

/// Integrates the configured run, writing the time-series CSV
/// (t, enstrophy, palinstrophy, q, |q-1|, max|omega|, Re/Im of the (0,1) mode),
/// periodic checkpoints and a final checkpoint under config.output_dir.
/// Enstrophy/palinstrophy columns are norms, not squares (stated in the CSV
/// header). On divergence the partial series plus a marker are kept and the
/// result carries the blow-up step.
SimulationResult run_simulation(const RunConfig& config);

struct ConvergenceStudyRow {
    double k = 0.0;
    double error_omega = 0.0;
    double error_psi = 0.0;
    double order_omega = 0.0;
    double order_psi = 0.0;
    bool has_order = false;
    bool failed = false;  // divergence recorded, study continues
};

/// Manufactured-solution k-sweep: integrates each k to config.duration and
/// measures relative l-infinity errors of omega and psi at the final time
/// against the exact fields. Writes convergence.csv under output_dir.
std::vector<ConvergenceStudyRow> run_convergence_study(const RunConfig& config);

/// Shared helper: the sampled diagnostics row for one state.
std::vector<double> diagnostics_row(const TwoLevelState& state, double k, double froude);

}  // namespace mrsav
