#pragma once

#include <string>

#include "mrsav/stepper.hpp"

namespace mrsav {

/// Solver state restored from disk, with the run parameters the file carried.
struct CheckpointData {
    TwoLevelState state;
    double t = 0.0;
    double k = 0.0;
    double gamma = 0.0;
};

/// Binary layout: magic "MRSAVGFD", u32 version, u32 dim, per-axis u32 modes,
/// per-axis f64 lengths, f64 {t, k, gamma, q^n, q^{n-1}}, u64 n, then omega^n
/// and omega^{n-1} as little-endian f64 (re, im) pairs in row-major
/// signed-index order. Round-trips bit-exactly.
void write_checkpoint(const std::string& path, const TwoLevelState& state, double k,
                      double gamma);

CheckpointData read_checkpoint(const std::string& path);

}  // namespace mrsav
