#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mrsav/grid.hpp"
#include "mrsav/spectral_field.hpp"

namespace mrsav {

/// Forward transform of real collocation values. Normalized by the point
/// count so the zero-mode coefficient equals the spatial mean.
SpectralField forward_transform(const Grid& grid, std::span<const double> values,
                                FieldRole role = FieldRole::generic);

/// Inverse transform back to real collocation values (real parts; the
/// imaginary residue of a conjugate-symmetric field is rounding noise).
std::vector<double> inverse_transform(const SpectralField& field);

namespace detail {
/// Unnormalized c2c transforms used internally; sign = -1 forward, +1 backward.
/// Plans are cached per shape; execution is thread-safe, plan creation is
/// serialized internally.
void fft_c2c(const Grid& grid, const std::complex<double>* in, std::complex<double>* out, int sign);

/// 1D helper for time-series work (arbitrary length, unnormalized, sign -1).
void fft_1d(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
}  // namespace detail

}  // namespace mrsav
