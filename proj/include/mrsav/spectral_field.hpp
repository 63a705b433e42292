#pragma once

#include <complex>
#include <vector>

#include "mrsav/grid.hpp"

namespace mrsav {

enum class FieldRole { generic, vorticity, streamfunction, forcing };

/// Full-spectrum complex Fourier coefficients of one scalar field.
/// coeff(kappa) is the amplitude of exp(i*kappa.x); for real-valued data the
/// array is conjugate-symmetric, coeff(-kappa) = conj(coeff(kappa)).
/// Value semantics throughout; fields move freely between threads.
class SpectralField {
  public:
    explicit SpectralField(const Grid& grid, FieldRole role = FieldRole::generic)
        : grid_(grid), role_(role), coeffs_(grid.point_count()) {}

    const Grid& grid() const { return grid_; }
    FieldRole role() const { return role_; }
    void set_role(FieldRole role) { role_ = role; }

    std::vector<std::complex<double>>& coeffs() { return coeffs_; }
    const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }

    std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return coeffs_[i]; }

    /// Coefficient at storage indices (FFT order).
    std::complex<double>& at(int i, int j, int k = 0) { return coeffs_[grid_.flat_index(i, j, k)]; }
    const std::complex<double>& at(int i, int j, int k = 0) const {
        return coeffs_[grid_.flat_index(i, j, k)];
    }

    /// Coefficient addressed by signed mode indices.
    std::complex<double>& at_mode(const Wavevector& kappa);
    const std::complex<double>& at_mode(const Wavevector& kappa) const;

    std::complex<double> zero_mode() const { return coeffs_[0]; }

    bool is_finite() const;
    double max_abs() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  private:
    Grid grid_;
    FieldRole role_;
    std::vector<std::complex<double>> coeffs_;
};

/// alpha*a + beta*b on one grid.
SpectralField lin_comb(double alpha, const SpectralField& a, double beta, const SpectralField& b);

/// Requires matching grids, throws ConfigError otherwise.
void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where);

}  // namespace mrsav
