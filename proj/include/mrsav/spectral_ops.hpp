#pragma once

#include "mrsav/spectral_field.hpp"

namespace mrsav {

struct ModelSpec;

/// d^order/dx_axis^order in spectral space: multiply by (i*kappa_axis)^order.
/// Odd orders zero the Nyquist coefficient (it has no signed partner).
SpectralField partial_derivative(const SpectralField& f, int axis, int order);

/// Stream function from vorticity: psi_hat = omega_hat / (kx^2 + ky^2 + F^2 kz^2)
/// for kappa != 0, with the zero mode gauged to 0. In 2D the divisor is |kappa|^2
/// and `froude` is ignored.
SpectralField invert_elliptic(const SpectralField& omega, double froude = 0.0);

/// Applies the forward elliptic operator (the inverse of invert_elliptic up to
/// the zero-mode gauge): omega_hat = (kx^2 + ky^2 + F^2 kz^2) * psi_hat.
SpectralField apply_elliptic(const SpectralField& psi, double froude = 0.0);

/// Solves (sigma + A) u = rhs mode by mode, A being the model's dissipation
/// operator with positive sign (nu |kappa|^2 isotropic, or
/// nu_h |kappa_h|^2 + nu_v kz^2 anisotropic).
SpectralField helmholtz_solve(const SpectralField& rhs, double sigma, const ModelSpec& model);

/// perp-grad(psi) . grad(omega) = -psi_y omega_x + psi_x omega_y, formed
/// pointwise in real space and transformed back. In 3D only horizontal
/// derivatives enter. Optional 2/3-rule truncation of the result.
SpectralField pseudo_spectral_jacobian(const SpectralField& psi, const SpectralField& omega,
                                       bool dealias = false);

/// Integral of f*g over the domain via Parseval:
/// |Omega| * Re sum_kappa f_hat conj(g_hat).
double inner_product_l2(const SpectralField& f, const SpectralField& g);

/// Squared Sobolev norm of order s in {-1, 0, 1}:
/// |Omega| * sum_{kappa != 0} |kappa|_F^{2s} |f_hat|^2, plus the zero-mode
/// term when s = 0. The weight |kappa|_F^2 carries the Froude factor on kz.
/// s = -1 requires a mean-zero field.
double sobolev_norm_sq(const SpectralField& f, int s, double froude = 0.0);

/// Zeroes the mean-mode coefficient, leaving the rest untouched.
SpectralField project_mean_zero(SpectralField f);

/// 2/3-rule truncation: zero every coefficient with any |signed index|
/// greater than floor(modes/3).
SpectralField dealias_two_thirds(SpectralField f);

}  // namespace mrsav
