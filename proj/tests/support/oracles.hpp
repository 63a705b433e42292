#pragma once

// Test-only helpers: independent oracles and random-field builders shared by
// the unit tests and the acceptance suite. Nothing here may call into the
// stepper's superposition path when acting as an oracle for it.

#include <random>

#include "mrsav/fft.hpp"
#include "mrsav/model.hpp"
#include "mrsav/spectral_ops.hpp"
#include "mrsav/stepper.hpp"

namespace mrsav::testing {

inline SpectralField random_field(const Grid& g, unsigned seed, double scale = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> v(g.point_count());
    for (auto& x : v) x = dist(rng);
    return forward_transform(g, v, FieldRole::vorticity);
}

inline SpectralField band_limited_random(const Grid& g, int max_index, unsigned seed,
                                         double scale = 1.0) {
    SpectralField f = random_field(g, seed, scale);
    for (int i = 0; i < g.modes(0); ++i)
        for (int j = 0; j < g.modes(1); ++j)
            if (std::abs(g.signed_index(0, i)) > max_index ||
                std::abs(g.signed_index(1, j)) > max_index)
                f.at(i, j) = 0.0;
    return project_mean_zero(std::move(f));
}

struct CoupledStep {
    SpectralField u;
    double q;
};

/// Solves one implicit step of the coupled (u, q) system by fixed-point
/// iteration, touching only the operator layer. Independent of the
/// superposition solve it is used to check.
inline CoupledStep coupled_step_fixed_point(const TwoLevelState& state, const ModelSpec& model,
                                            const ForcingField& forcing,
                                            const StepperParams& params) {
    const double two_k = 2.0 * params.k;
    const double sigma = 3.0 / two_k;
    SpectralField u_bar = gear_extrapolate(state.u_curr, state.u_prev);
    SpectralField n_bar = nonlinear_term(invert_elliptic(u_bar, model.elliptic_froude()), u_bar,
                                         model, params.dealias);
    SpectralField hist = forcing((state.step_index + 1) * params.k);
    for (std::size_t i = 0; i < hist.size(); ++i)
        hist[i] += (4.0 * state.u_curr[i] - state.u_prev[i]) / two_k;

    double q = state.q_curr;
    SpectralField u = state.u_curr;
    for (int iter = 0; iter < 500; ++iter) {
        SpectralField rhs = hist;
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= q * n_bar[i];
        u = helmholtz_solve(rhs, sigma, model);
        const double coupling = inner_product_l2(n_bar, u);
        const double q_new =
            (params.gamma + (4.0 * state.q_curr - state.q_prev) / two_k + coupling) /
            (sigma + params.gamma);
        const bool done = std::abs(q_new - q) < 1e-15 * (1.0 + std::abs(q_new));
        q = q_new;
        if (done) break;
    }
    SpectralField rhs = hist;
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= q * n_bar[i];
    u = helmholtz_solve(rhs, sigma, model);
    return {std::move(u), q};
}

}  // namespace mrsav::testing
