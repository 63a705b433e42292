#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrsav {

/// Bad grid/model/config input: wrong shapes, unknown keys, unresolvable modes.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File system / serialization failures (missing file, bad magic, truncation).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Non-finite data reached an operator that requires finite input.
class NumericFault : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The scalar auxiliary solve hit a (near-)zero denominator. The step is
/// aborted instead of regularized; the denominator is kept for diagnostics.
class SingularScalarSolveError : public std::runtime_error {
  public:
    SingularScalarSolveError(const std::string& what, double denominator)
        : std::runtime_error(what), denominator(denominator) {}
    double denominator;
};

/// A time step produced NaN/Inf. Carries the step index so blow-up
/// comparisons can report where a run died.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string& what, std::int64_t step, double time)
        : std::runtime_error(what), step(step), time(time) {}
    std::int64_t step;
    double time;
};

}  // namespace mrsav
