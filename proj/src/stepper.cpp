#include "mrsav/stepper.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "mrsav/errors.hpp"
#include "mrsav/spectral_ops.hpp"

namespace mrsav {

void StepperParams::validate() const {
    if (!(k > 0.0)) throw ConfigError("stepper: time step k must be positive");
    if (gamma < 0.0) throw ConfigError("stepper: gamma must be >= 0");
}

bool TwoLevelState::is_finite() const {
    return std::isfinite(q_curr) && std::isfinite(q_prev) && u_curr.is_finite() &&
           u_prev.is_finite();
}

SpectralField gear_extrapolate(const SpectralField& u_curr, const SpectralField& u_prev) {
    return lin_comb(2.0, u_curr, -1.0, u_prev);
}

double g_norm_sq(double newest, double older) {
    return 0.25 * (5.0 * newest * newest - 4.0 * newest * older + older * older);
}

double g_norm_sq(const SpectralField& newest, const SpectralField& older) {
    return 0.25 * (5.0 * inner_product_l2(newest, newest) -
                   4.0 * inner_product_l2(newest, older) + inner_product_l2(older, older));
}

double g_state_energy(const TwoLevelState& state) {
    return g_norm_sq(state.u_curr, state.u_prev) + g_norm_sq(state.q_curr, state.q_prev);
}

double solve_auxiliary_scalar(double q_curr, double q_prev, double b1, double b2,
                              const StepperParams& params) {
    const double sigma = 3.0 / (2.0 * params.k);
    const double denom = sigma + params.gamma - b2;
    if (std::abs(denom) < 1e-12 * (sigma + params.gamma))
        throw SingularScalarSolveError(
            "auxiliary scalar solve singular: 3/(2k) + gamma - b2 = " + std::to_string(denom) +
                " with b2 = " + std::to_string(b2),
            denom);
    return (params.gamma + (4.0 * q_curr - q_prev) / (2.0 * params.k) + b1) / denom;
}

namespace {

void check_step_finite(const SpectralField& u, double q, std::int64_t step, double k) {
    if (std::isfinite(q) && u.is_finite()) return;
    throw DivergenceError("solution lost finiteness at step " + std::to_string(step), step,
                          static_cast<double>(step) * k);
}

double first_order_auxiliary(double q0, double b1, double b2, const StepperParams& params) {
    const double sigma = 1.0 / params.k;
    const double denom = sigma + params.gamma - b2;
    if (std::abs(denom) < 1e-12 * (sigma + params.gamma))
        throw SingularScalarSolveError(
            "auxiliary scalar solve singular in bootstrap: 1/k + gamma - b2 = " +
                std::to_string(denom),
            denom);
    return (params.gamma + q0 / params.k + b1) / denom;
}

TwoLevelState detail_step_bdf2(const TwoLevelState& state, const ModelSpec& model,
                               const ForcingField& forcing, const StepperParams& params,
                               SchemeMode mode);

}  // namespace

TwoLevelState step_bdf2(const TwoLevelState& state, const ModelSpec& model,
                        const ForcingField& forcing, const StepperParams& params,
                        SchemeMode mode) {
    const std::int64_t next = state.step_index + 1;
    try {
        return detail_step_bdf2(state, model, forcing, params, mode);
    } catch (const NumericFault& fault) {
        // A blown-up state surfaces as NaN/Inf inside the solves; report it
        // as divergence at this step.
        throw DivergenceError(std::string("divergence at step ") + std::to_string(next) + ": " +
                                  fault.what(),
                              next, static_cast<double>(next) * params.k);
    }
}

namespace {

TwoLevelState detail_step_bdf2(const TwoLevelState& state, const ModelSpec& model,
                               const ForcingField& forcing, const StepperParams& params,
                               SchemeMode mode) {
    const std::int64_t next = state.step_index + 1;
    const double two_k = 2.0 * params.k;
    const double sigma = 3.0 / two_k;

    SpectralField u_bar = gear_extrapolate(state.u_curr, state.u_prev);
    SpectralField psi_bar = invert_elliptic(u_bar, model.elliptic_froude());
    SpectralField n_bar = nonlinear_term(psi_bar, u_bar, model, params.dealias);

    SpectralField rhs1 = forcing(static_cast<double>(next) * params.k);
    for (std::size_t i = 0; i < rhs1.size(); ++i)
        rhs1[i] += (4.0 * state.u_curr[i] - state.u_prev[i]) / two_k;
    SpectralField u1 = helmholtz_solve(rhs1, sigma, model);

    SpectralField u2 = helmholtz_solve(-1.0 * n_bar, sigma, model);

    double q_next = 1.0;
    if (mode == SchemeMode::mrsav) {
        const double b1 = inner_product_l2(n_bar, u1);
        const double b2 = inner_product_l2(n_bar, u2);
        q_next = solve_auxiliary_scalar(state.q_curr, state.q_prev, b1, b2, params);
    }

    SpectralField u_next = lin_comb(1.0, u1, q_next, u2);
    u_next.set_role(state.u_curr.role());
    check_step_finite(u_next, q_next, next, params.k);

    return TwoLevelState(std::move(u_next), state.u_curr, q_next,
                         mode == SchemeMode::mrsav ? state.q_curr : 1.0, next);
}

}  // namespace

TwoLevelState step_first_order(const SpectralField& u0, double q0, const ModelSpec& model,
                               const ForcingField& forcing, const StepperParams& params,
                               SchemeMode mode) {
    const double sigma = 1.0 / params.k;

    SpectralField psi0 = invert_elliptic(u0, model.elliptic_froude());
    SpectralField n0 = nonlinear_term(psi0, u0, model, params.dealias);

    SpectralField rhs1 = forcing(params.k);
    for (std::size_t i = 0; i < rhs1.size(); ++i) rhs1[i] += u0[i] / params.k;
    SpectralField u1 = helmholtz_solve(rhs1, sigma, model);

    SpectralField u2 = helmholtz_solve(-1.0 * n0, sigma, model);

    double q1 = 1.0;
    if (mode == SchemeMode::mrsav) {
        const double b1 = inner_product_l2(n0, u1);
        const double b2 = inner_product_l2(n0, u2);
        q1 = first_order_auxiliary(q0, b1, b2, params);
    }

    SpectralField u_next = lin_comb(1.0, u1, q1, u2);
    u_next.set_role(u0.role());
    check_step_finite(u_next, q1, 1, params.k);

    return TwoLevelState(std::move(u_next), u0, q1, mode == SchemeMode::mrsav ? q0 : 1.0, 1);
}

namespace {

void notify(std::span<const Observer> observers, std::int64_t step, double time,
            const TwoLevelState& state) {
    for (const auto& obs : observers)
        if (obs.stride >= 1 && step % obs.stride == 0 && obs.fn) obs.fn(step, time, state);
}

}  // namespace

TwoLevelState run_trajectory(const SpectralField& u0, double q0, const ModelSpec& model,
                             const ForcingField& forcing, const StepperParams& params,
                             std::int64_t n_steps, std::span<const Observer> observers,
                             SchemeMode mode) {
    params.validate();
    model.validate(u0.grid());
    if (n_steps < 1) throw ConfigError("run_trajectory: n_steps must be >= 1");

    TwoLevelState state = step_first_order(u0, q0, model, forcing, params, mode);
    notify(observers, state.step_index, state.time(params.k), state);
    return run_trajectory(std::move(state), model, forcing, params, n_steps, observers, mode);
}

TwoLevelState run_trajectory(TwoLevelState state, const ModelSpec& model,
                             const ForcingField& forcing, const StepperParams& params,
                             std::int64_t n_target, std::span<const Observer> observers,
                             SchemeMode mode) {
    params.validate();
    model.validate(state.u_curr.grid());
    while (state.step_index < n_target) {
        state = step_bdf2(state, model, forcing, params, mode);
        notify(observers, state.step_index, state.time(params.k), state);
    }
    return state;
}

}  // namespace mrsav
