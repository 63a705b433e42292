#include "mrsav/spectral_field.hpp"

#include <cmath>
#include <string>

#include "mrsav/errors.hpp"

namespace mrsav {

namespace {
std::size_t mode_flat_index(const Grid& grid, const Wavevector& kappa) {
    if (!kappa.in_range(grid)) throw ConfigError("wavevector outside the grid's signed index range");
    const int i = grid.storage_index(0, kappa.components[0]);
    const int j = grid.storage_index(1, kappa.components[1]);
    const int k = grid.dim() == 3 ? grid.storage_index(2, kappa.components[2]) : 0;
    return grid.flat_index(i, j, k);
}
}  // namespace

std::complex<double>& SpectralField::at_mode(const Wavevector& kappa) {
    return coeffs_[mode_flat_index(grid_, kappa)];
}

const std::complex<double>& SpectralField::at_mode(const Wavevector& kappa) const {
    return coeffs_[mode_flat_index(grid_, kappa)];
}

bool SpectralField::is_finite() const {
    for (const auto& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double SpectralField::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(*this, other, "field addition");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(*this, other, "field subtraction");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField lin_comb(double alpha, const SpectralField& a, double beta, const SpectralField& b) {
    require_same_grid(a, b, "lin_comb");
    SpectralField out(a.grid(), a.role());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = alpha * a[i] + beta * b[i];
    return out;
}

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where) {
    if (a.grid() != b.grid())
        throw ConfigError(std::string("grid mismatch in ") + where);
}

}  // namespace mrsav
