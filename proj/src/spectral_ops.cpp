#include "mrsav/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mrsav/errors.hpp"
#include "mrsav/fft.hpp"
#include "mrsav/model.hpp"

namespace mrsav {

namespace {

// Applies fn(flat_index, kx, ky, kz) over all modes of a 2D or 3D grid.
template <typename Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
    const int n0 = grid.modes(0);
    const int n1 = grid.modes(1);
    if (grid.dim() == 2) {
        std::size_t idx = 0;
        for (int i = 0; i < n0; ++i) {
            const double kx = grid.wavenumber(0, i);
            for (int j = 0; j < n1; ++j, ++idx) fn(idx, kx, grid.wavenumber(1, j), 0.0);
        }
        return;
    }
    const int n2 = grid.modes(2);
    std::size_t idx = 0;
    for (int i = 0; i < n0; ++i) {
        const double kx = grid.wavenumber(0, i);
        for (int j = 0; j < n1; ++j) {
            const double ky = grid.wavenumber(1, j);
            for (int k = 0; k < n2; ++k, ++idx) fn(idx, kx, ky, grid.wavenumber(2, k));
        }
    }
}

}  // namespace

namespace {

// First-derivative multiplier: i*kappa with the Nyquist entry zeroed (the
// unpaired mode carries no sign information for odd operators).
double first_derivative_wavenumber(const Grid& grid, int axis, int storage_index) {
    return grid.is_nyquist(axis, storage_index) ? 0.0 : grid.wavenumber(axis, storage_index);
}

}  // namespace

SpectralField partial_derivative(const SpectralField& f, int axis, int order) {
    const Grid& grid = f.grid();
    if (axis < 0 || axis >= grid.dim())
        throw ConfigError("partial_derivative: axis out of range");
    if (order != 1 && order != 2)
        throw ConfigError("partial_derivative: order must be 1 or 2");

    SpectralField out(grid, f.role());
    const int n0 = grid.modes(0), n1 = grid.modes(1), n2 = grid.dim() == 3 ? grid.modes(2) : 1;
    std::size_t idx = 0;
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j)
            for (int k = 0; k < n2; ++k, ++idx) {
                const int s = axis == 0 ? i : (axis == 1 ? j : k);
                if (order == 1) {
                    const double w = first_derivative_wavenumber(grid, axis, s);
                    out[idx] = std::complex<double>(-w * f[idx].imag(), w * f[idx].real());
                } else {
                    const double w = grid.wavenumber(axis, s);
                    out[idx] = -w * w * f[idx];
                }
            }
    return out;
}

SpectralField invert_elliptic(const SpectralField& omega, double froude) {
    const Grid& grid = omega.grid();
    SpectralField psi(grid, FieldRole::streamfunction);
    const double f2 = froude * froude;
    bool singular = false;
    for_each_mode(grid, [&](std::size_t idx, double kx, double ky, double kz) {
        const double denom = kx * kx + ky * ky + f2 * kz * kz;
        if (denom > 0.0) {
            psi[idx] = omega[idx] / denom;
        } else if (idx != 0) {
            // Pure-z mode with F = 0: the operator is not invertible there.
            if (std::abs(omega[idx]) > 0.0) singular = true;
            psi[idx] = 0.0;
        } else {
            psi[idx] = 0.0;  // zero-mode gauge
        }
    });
    if (singular)
        throw NumericFault(
            "invert_elliptic: F = 0 with nonzero pure-z modes, operator singular on that subspace");
    return psi;
}

SpectralField apply_elliptic(const SpectralField& psi, double froude) {
    const Grid& grid = psi.grid();
    SpectralField omega(grid, FieldRole::vorticity);
    const double f2 = froude * froude;
    for_each_mode(grid, [&](std::size_t idx, double kx, double ky, double kz) {
        omega[idx] = (kx * kx + ky * ky + f2 * kz * kz) * psi[idx];
    });
    return omega;
}

SpectralField helmholtz_solve(const SpectralField& rhs, double sigma, const ModelSpec& model) {
    if (!rhs.is_finite())
        throw NumericFault("helmholtz_solve: non-finite right-hand side");
    const Grid& grid = rhs.grid();
    SpectralField u(grid, rhs.role());
    for_each_mode(grid, [&](std::size_t idx, double kx, double ky, double kz) {
        u[idx] = rhs[idx] / (sigma + model.dissipation_symbol(kx, ky, kz));
    });
    return u;
}

namespace {

// Packs the horizontal gradient into one complex array, d/dx + i d/dy of f.
// Both component spectra are conjugate-symmetric, so one backward transform
// delivers f_x as the real part and f_y as the imaginary part.
std::vector<std::complex<double>> gradient_packed_real(const SpectralField& f) {
    const Grid& grid = f.grid();
    std::vector<std::complex<double>> packed(grid.point_count());
    const int n0 = grid.modes(0), n1 = grid.modes(1), n2 = grid.dim() == 3 ? grid.modes(2) : 1;
    std::size_t idx = 0;
    for (int i = 0; i < n0; ++i) {
        const double kx = first_derivative_wavenumber(grid, 0, i);
        for (int j = 0; j < n1; ++j) {
            const double ky = first_derivative_wavenumber(grid, 1, j);
            for (int k = 0; k < n2; ++k, ++idx) {
                const std::complex<double> c = f[idx];
                // (i kx) c + i (i ky) c = -(kx c_im + ky c_re) + i (kx c_re - ky c_im)
                packed[idx] = {-(kx * c.imag() + ky * c.real()),
                               kx * c.real() - ky * c.imag()};
            }
        }
    }
    std::vector<std::complex<double>> out(grid.point_count());
    detail::fft_c2c(grid, packed.data(), out.data(), 1 /* backward */);
    return out;
}

}  // namespace

SpectralField pseudo_spectral_jacobian(const SpectralField& psi, const SpectralField& omega,
                                       bool dealias) {
    require_same_grid(psi, omega, "pseudo_spectral_jacobian");
    const Grid& grid = psi.grid();

    // grad psi and grad omega in real space, one packed transform each.
    const auto grad_psi = gradient_packed_real(psi);
    const auto grad_omega = gradient_packed_real(omega);

    std::vector<std::complex<double>> product(grid.point_count());
    for (std::size_t i = 0; i < product.size(); ++i) {
        const double px = grad_psi[i].real(), py = grad_psi[i].imag();
        const double ox = grad_omega[i].real(), oy = grad_omega[i].imag();
        product[i] = -py * ox + px * oy;
    }

    SpectralField out(grid);
    detail::fft_c2c(grid, product.data(), out.coeffs().data(), -1 /* forward */);
    const double scale = 1.0 / static_cast<double>(grid.point_count());
    for (auto& c : out.coeffs()) c *= scale;
    if (dealias) out = dealias_two_thirds(std::move(out));
    return out;
}

double inner_product_l2(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g, "inner_product_l2");
    long double acc = 0.0L;
    const auto& fc = f.coeffs();
    const auto& gc = g.coeffs();
    for (std::size_t i = 0; i < fc.size(); ++i)
        acc += static_cast<long double>(fc[i].real()) * gc[i].real() +
               static_cast<long double>(fc[i].imag()) * gc[i].imag();
    return static_cast<double>(acc) * f.grid().volume();
}

double sobolev_norm_sq(const SpectralField& f, int s, double froude) {
    if (s != -1 && s != 0 && s != 1)
        throw ConfigError("sobolev_norm_sq: order must be -1, 0, or 1");
    if (s == -1 && std::abs(f.zero_mode()) > 1e-13 * (1.0 + f.max_abs()))
        throw ConfigError("sobolev_norm_sq: s = -1 requires a mean-zero field");

    const Grid& grid = f.grid();
    const double f2 = froude * froude;
    long double acc = 0.0L;
    for_each_mode(grid, [&](std::size_t idx, double kx, double ky, double kz) {
        if (idx == 0) return;
        const double w = kx * kx + ky * ky + f2 * kz * kz;
        const double mag2 = std::norm(f[idx]);
        if (s == 0)
            acc += mag2;
        else if (s == 1)
            acc += w * mag2;
        else if (w > 0.0)
            acc += mag2 / w;
    });
    if (s == 0) acc += std::norm(f.zero_mode());
    return static_cast<double>(acc) * grid.volume();
}

SpectralField project_mean_zero(SpectralField f) {
    f[0] = 0.0;
    return f;
}

SpectralField dealias_two_thirds(SpectralField f) {
    const Grid& grid = f.grid();
    // |signed index| > floor(N/3) is the contiguous storage range
    // (cutoff, N - cutoff); zero it blockwise.
    std::array<int, 3> cutoff{}, kill_lo{}, kill_hi{};
    for (int a = 0; a < grid.dim(); ++a) {
        cutoff[a] = grid.modes(a) / 3;
        kill_lo[a] = cutoff[a] + 1;
        kill_hi[a] = grid.modes(a) - cutoff[a];  // exclusive of the surviving tail
    }

    auto* data = f.coeffs().data();
    const int n0 = grid.modes(0), n1 = grid.modes(1), n2 = grid.dim() == 3 ? grid.modes(2) : 1;
    const std::size_t row = static_cast<std::size_t>(n1) * n2;
    const std::complex<double> zero{0.0, 0.0};
    for (int i = 0; i < n0; ++i) {
        auto* plane = data + static_cast<std::size_t>(i) * row;
        if (i >= kill_lo[0] && i < kill_hi[0]) {
            std::fill(plane, plane + row, zero);
            continue;
        }
        for (int j = 0; j < n1; ++j) {
            auto* line = plane + static_cast<std::size_t>(j) * n2;
            if (j >= kill_lo[1] && j < kill_hi[1]) {
                std::fill(line, line + n2, zero);
            } else if (grid.dim() == 3) {
                std::fill(line + kill_lo[2], line + kill_hi[2], zero);
            }
        }
    }
    return f;
}

}  // namespace mrsav
