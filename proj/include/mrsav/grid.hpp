#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace mrsav {

/// Periodic collocation grid in 2 or 3 dimensions.
///
/// Storage convention for spectral data is FFT order along every axis:
/// storage index j in [0, N) maps to the signed mode index
/// s = j for j < N/2 and s = j - N for j >= N/2, so signed indices run over
/// {-N/2, ..., N/2 - 1}. The physical wavenumber on axis a is
/// 2*pi/length[a] * s. The index j = N/2 (s = -N/2) is the Nyquist mode.
class Grid {
  public:
    Grid(int dim, std::array<double, 3> lengths, std::array<int, 3> modes);

    int dim() const { return dim_; }
    double length(int axis) const { return lengths_[axis]; }
    int modes(int axis) const { return modes_[axis]; }
    const std::array<double, 3>& lengths() const { return lengths_; }
    const std::array<int, 3>& mode_counts() const { return modes_; }

    std::size_t point_count() const { return point_count_; }
    double volume() const { return volume_; }

    /// Signed mode index for a storage index on one axis.
    int signed_index(int axis, int storage_index) const {
        const int n = modes_[axis];
        return storage_index < n / 2 ? storage_index : storage_index - n;
    }
    /// Storage index for a signed mode index.
    int storage_index(int axis, int signed_idx) const {
        const int n = modes_[axis];
        return signed_idx >= 0 ? signed_idx : signed_idx + n;
    }
    /// Physical wavenumber 2*pi/L * signed_index at a storage index.
    double wavenumber(int axis, int storage_index) const {
        return wave_unit_[axis] * signed_index(axis, storage_index);
    }
    double wavenumber_unit(int axis) const { return wave_unit_[axis]; }
    bool is_nyquist(int axis, int storage_index) const {
        return storage_index == modes_[axis] / 2;
    }

    /// Row-major flat index, axis 0 slowest (matches the FFT layout).
    std::size_t flat_index(int i, int j, int k = 0) const {
        if (dim_ == 2) return static_cast<std::size_t>(i) * modes_[1] + j;
        return (static_cast<std::size_t>(i) * modes_[1] + j) * modes_[2] + k;
    }

    /// Collocation point coordinate along one axis.
    double coordinate(int axis, int index) const {
        return lengths_[axis] * index / modes_[axis];
    }

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

  private:
    int dim_;
    std::array<double, 3> lengths_;
    std::array<int, 3> modes_;
    std::array<double, 3> wave_unit_;
    std::size_t point_count_;
    double volume_;
};

/// Signed per-axis mode indices identifying one Fourier coefficient.
struct Wavevector {
    std::array<int, 3> components{0, 0, 0};

    Wavevector() = default;
    Wavevector(int kx, int ky, int kz = 0) : components{kx, ky, kz} {}

    bool in_range(const Grid& grid) const {
        for (int a = 0; a < grid.dim(); ++a) {
            const int n = grid.modes(a);
            if (components[a] < -n / 2 || components[a] > n / 2 - 1) return false;
        }
        for (int a = grid.dim(); a < 3; ++a)
            if (components[a] != 0) return false;
        return true;
    }
};

}  // namespace mrsav
