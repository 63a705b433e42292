#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "mrsav/model.hpp"
#include "mrsav/spectral_field.hpp"

namespace mrsav {

struct StepperParams {
    double k = 0.01;        // time step
    double gamma = 1000.0;  // relaxation rate of the auxiliary scalar; 0 allowed
    bool dealias = false;

    void validate() const;
};

/// Two-level solver history: (omega^n, omega^{n-1}, q^n, q^{n-1}) plus the
/// step index. t = n * k throughout, never accumulated.
struct TwoLevelState {
    SpectralField u_curr;
    SpectralField u_prev;
    double q_curr = 1.0;
    double q_prev = 1.0;
    std::int64_t step_index = 0;

    TwoLevelState(SpectralField curr, SpectralField prev, double q, double q_prev_,
                  std::int64_t n)
        : u_curr(std::move(curr)), u_prev(std::move(prev)), q_curr(q), q_prev(q_prev_),
          step_index(n) {}

    double time(double k) const { return static_cast<double>(step_index) * k; }
    bool is_finite() const;
};

/// explicit_baseline freezes q at 1 and skips the auxiliary equation: the
/// classical IMEX-BDF2 scheme with Gear-extrapolated advection, sharing every
/// other code path.
enum class SchemeMode { mrsav, explicit_baseline };

/// Gear extrapolation 2 u^n - u^{n-1}; exact for states linear in time.
SpectralField gear_extrapolate(const SpectralField& u_curr, const SpectralField& u_prev);

/// Quadratic form of the stability matrix (1/4)[[5,-2],[-2,1]] on
/// [newest, older]: (1/4)(5 a^2 - 4 a b + b^2) = (1/4)(a^2 + (2a - b)^2).
double g_norm_sq(double newest, double older);
double g_norm_sq(const SpectralField& newest, const SpectralField& older);

/// Combined G-energy ||V^n||_G^2 + |Q^n|_G^2 of a state.
double g_state_energy(const TwoLevelState& state);

/// Closed-form auxiliary solve: with b1 = <N(ubar), u1>, b2 = <N(ubar), u2>,
///   q^{n+1} = [gamma + (4 q^n - q^{n-1})/(2k) + b1] / [3/(2k) + gamma - b2].
/// A denominator below 1e-12 * (3/(2k) + gamma) aborts the step.
double solve_auxiliary_scalar(double q_curr, double q_prev, double b1, double b2,
                              const StepperParams& params);

/// One mr-SAV-BDF2 step:
///   delta_t u^{n+1} + A u^{n+1} + q^{n+1} N(ubar^{n+1}) = F^{n+1}
///   delta_t q^{n+1} + gamma q^{n+1} - <N(ubar^{n+1}), u^{n+1}> = gamma
/// solved by superposition u^{n+1} = u1 + q^{n+1} u2 with two constant-
/// coefficient Helmholtz solves at sigma = 3/(2k).
TwoLevelState step_bdf2(const TwoLevelState& state, const ModelSpec& model,
                        const ForcingField& forcing, const StepperParams& params,
                        SchemeMode mode = SchemeMode::mrsav);

/// Backward-Euler bootstrap from single-level data (u^0, q^0):
///   (u^1 - u^0)/k + A u^1 + q^1 N(u^0) = F^1
///   (q^1 - q^0)/k + gamma q^1 - <N(u^0), u^1> = gamma
/// with the same superposition at sigma = 1/k. Returns the two-level state.
TwoLevelState step_first_order(const SpectralField& u0, double q0, const ModelSpec& model,
                               const ForcingField& forcing, const StepperParams& params,
                               SchemeMode mode = SchemeMode::mrsav);

/// Read-only trajectory callback; fires after every completed step whose
/// global index is a multiple of `stride`. Must not mutate the state.
struct Observer {
    std::int64_t stride = 1;
    std::function<void(std::int64_t step, double time, const TwoLevelState&)> fn;
};

/// Bootstrap once, then BDF2 until n_steps are done. Deterministic given
/// identical inputs. Divergence aborts with the failing step recorded.
TwoLevelState run_trajectory(const SpectralField& u0, double q0, const ModelSpec& model,
                             const ForcingField& forcing, const StepperParams& params,
                             std::int64_t n_steps, std::span<const Observer> observers = {},
                             SchemeMode mode = SchemeMode::mrsav);

/// Continue an existing two-level state (e.g. restored from a checkpoint)
/// until its step index reaches n_target.
TwoLevelState run_trajectory(TwoLevelState state, const ModelSpec& model,
                             const ForcingField& forcing, const StepperParams& params,
                             std::int64_t n_target, std::span<const Observer> observers = {},
                             SchemeMode mode = SchemeMode::mrsav);

}  // namespace mrsav
