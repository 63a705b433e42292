#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mrsav/model.hpp"
#include "mrsav/stepper.hpp"

namespace mrsav {

enum class RunMode { mrsav, explicit_baseline, gamma_zero };
enum class BootstrapMode { first_order, exact_seed };

/// Full description of one run, parsed from a sectioned plain-text config
/// with optional command-line overrides. Round-trips through serialize().
struct RunConfig {
    Grid grid{2, {2.0 * M_PI, 2.0 * M_PI, 0.0}, {128, 128, 1}};
    ModelSpec model;
    double reynolds = 100.0;
    ForcingSpec forcing;
    StepperParams stepper;
    BootstrapMode bootstrap = BootstrapMode::first_order;

    double duration = 1.0;
    InitialConditionPreset initial = InitialConditionPreset::zero;
    std::int64_t sample_stride = 10;
    std::int64_t checkpoint_stride = 0;  // 0 = only the final checkpoint
    std::string output_dir = "out";
    RunMode mode = RunMode::mrsav;
    std::string restart_from;  // optional checkpoint path

    std::vector<double> k_list;  // convergence study sweep

    std::int64_t step_count() const;
    SchemeMode scheme_mode() const {
        return mode == RunMode::explicit_baseline ? SchemeMode::explicit_baseline
                                                  : SchemeMode::mrsav;
    }
    void validate() const;
};

/// Parses a config file; `overrides` hold "section.key=value" entries applied
/// after the file (the file may be empty-string to start from defaults).
/// Unknown keys, missing required keys and ill-typed values are rejected with
/// the offending key path in the message.
RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides = {});
RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides = {},
                            const std::string& origin = "<inline>");

/// Emits the sectioned plain-text form; parse_config_text(serialize(c))
/// reproduces an equal config.
std::string serialize_config(const RunConfig& config);

bool operator==(const RunConfig& a, const RunConfig& b);

}  // namespace mrsav
