#pragma once

#include <string>

#include "mrsav/spectral_field.hpp"

namespace mrsav {

enum class ModelKind { qg2d, cqg3d };

/// Physical model: 2D barotropic QG (beta = 0 gives the 2D NSE in
/// vorticity-stream-function form) or the 3D continuously stratified QG
/// system with anisotropic dissipation and Froude-weighted elliptic operator.
struct ModelSpec {
    ModelKind kind = ModelKind::qg2d;
    double nu_h = 0.01;   // 1/Re; horizontal viscosity for cqg3d
    double nu_v = 0.01;   // vertical viscosity (cqg3d only)
    double beta = 0.0;
    double froude = 1.0;  // cqg3d only, > 0

    static ModelSpec qg2d(double reynolds, double beta = 0.0);
    static ModelSpec cqg3d(double reynolds, double beta, double froude);

    int dim() const { return kind == ModelKind::qg2d ? 2 : 3; }
    /// Symbol of the (positive) dissipation operator A at one mode.
    double dissipation_symbol(double kx, double ky, double kz) const {
        if (kind == ModelKind::qg2d) return nu_h * (kx * kx + ky * ky);
        return nu_h * (kx * kx + ky * ky) + nu_v * kz * kz;
    }
    /// Froude factor handed to the elliptic/Sobolev weights (0 in 2D).
    double elliptic_froude() const { return kind == ModelKind::qg2d ? 0.0 : froude; }

    void validate(const Grid& grid) const;
};

/// Vorticity-equation nonlinearity N(omega) evaluated at an extrapolated pair:
/// perp-grad(psi) . grad(omega) + beta * d(psi)/dx, horizontal in 3D. The beta
/// term sits inside the same bracket the auxiliary scalar multiplies.
SpectralField nonlinear_term(const SpectralField& psi, const SpectralField& omega,
                             const ModelSpec& model, bool dealias = false);

/// Kolmogorov forcing in vorticity form, the curl of [m^3/Re cos(m y), 0]:
/// F_omega = m^4/Re sin(m y). Mean-zero; on 3D grids it is extended
/// z-independently. The basic flow psi = sin(m y) is a steady state.
SpectralField kolmogorov_vorticity_forcing(int m, double reynolds, const Grid& grid);

/// Prescribed exact stream function psi_e(t, x) = amplitude(t) * Phi(x) with
/// Phi a product of cos(2 pi m x_a / L_a) over the axes. Phi is an
/// eigenfunction of the elliptic operator, so omega_e = lambda * psi_e and the
/// self-advection J(psi_e, omega_e) vanishes identically; the associated
/// forcing is exactly representable on the grid.
struct ManufacturedSolution {
    enum class Amplitude { cos_t, unit };
    int mode = 1;
    Amplitude amplitude = Amplitude::cos_t;

    double amp(double t) const;
    double amp_dot(double t) const;
};

/// psi_e(t) as a spectral field (2^dim corner modes, coefficient a(t)/2^dim).
SpectralField manufactured_psi(const ManufacturedSolution& ms, double t, const Grid& grid);

/// omega_e(t) = forward elliptic operator applied to psi_e(t).
SpectralField manufactured_omega(const ManufacturedSolution& ms, double t, const Grid& grid,
                                 const ModelSpec& model);

/// Forcing that makes (psi_e, omega_e) an exact solution of the vorticity
/// equation: f = d(omega_e)/dt + A omega_e + N(omega_e).
SpectralField manufactured_forcing(const ManufacturedSolution& ms, double t,
                                   const ModelSpec& model, const Grid& grid);

/// Forcing configuration for a run.
struct ForcingSpec {
    enum class Kind { none, kolmogorov, manufactured, custom };
    Kind kind = Kind::none;
    int kolmogorov_m = 2;
    ManufacturedSolution manufactured;
    std::string custom_path;  // spectral field file, see field_io

    bool time_dependent() const {
        return kind == Kind::manufactured &&
               manufactured.amplitude == ManufacturedSolution::Amplitude::cos_t;
    }
};

/// Evaluates the configured forcing; static kinds are cached at construction.
class ForcingField {
  public:
    ForcingField(const ForcingSpec& spec, const ModelSpec& model, const Grid& grid,
                 double reynolds);

    /// Forcing at time t (the stepper calls this with t^{n+1}).
    SpectralField operator()(double t) const;
    const ForcingSpec& spec() const { return spec_; }

  private:
    ForcingSpec spec_;
    ModelSpec model_;
    Grid grid_;
    SpectralField cached_;
};

enum class InitialConditionPreset {
    zero,
    kolmogorov_perturbed_a,  // psi0 = sin(2y) + 0.001 sin(2x) sin(2y)
    kolmogorov_perturbed_b,  // psi0 = sin(2y) + 0.001 sin(2 pi x) sin(2 pi y)
    manufactured_t0,
};

/// Initial vorticity: the preset stream function sampled on the grid with the
/// forward elliptic operator applied (mean-zero by construction).
SpectralField initial_condition(InitialConditionPreset preset, const Grid& grid,
                                const ModelSpec& model,
                                const ManufacturedSolution* ms = nullptr);

}  // namespace mrsav
