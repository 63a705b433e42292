#include "mrsav/model.hpp"

#include <cmath>
#include <string>

#include "mrsav/errors.hpp"
#include "mrsav/fft.hpp"
#include "mrsav/field_io.hpp"
#include "mrsav/spectral_ops.hpp"

namespace mrsav {

ModelSpec ModelSpec::qg2d(double reynolds, double beta) {
    ModelSpec m;
    m.kind = ModelKind::qg2d;
    m.nu_h = m.nu_v = 1.0 / reynolds;
    m.beta = beta;
    return m;
}

ModelSpec ModelSpec::cqg3d(double reynolds, double beta, double froude) {
    ModelSpec m;
    m.kind = ModelKind::cqg3d;
    m.nu_h = m.nu_v = 1.0 / reynolds;
    m.beta = beta;
    m.froude = froude;
    return m;
}

void ModelSpec::validate(const Grid& grid) const {
    if (grid.dim() != dim())
        throw ConfigError("model dimensionality does not match the grid");
    if (!(nu_h > 0.0) || !(nu_v > 0.0)) throw ConfigError("viscosities must be positive");
    if (beta < 0.0) throw ConfigError("beta must be >= 0");
    if (kind == ModelKind::cqg3d && !(froude > 0.0))
        throw ConfigError("cqg3d requires froude > 0");
}

SpectralField nonlinear_term(const SpectralField& psi, const SpectralField& omega,
                             const ModelSpec& model, bool dealias) {
    require_same_grid(psi, omega, "nonlinear_term");
    SpectralField n = pseudo_spectral_jacobian(psi, omega, dealias);
    if (model.beta != 0.0) {
        SpectralField psi_x = partial_derivative(psi, 0, 1);
        for (std::size_t i = 0; i < n.size(); ++i) n[i] += model.beta * psi_x[i];
    }
    return n;
}

SpectralField kolmogorov_vorticity_forcing(int m, double reynolds, const Grid& grid) {
    if (m < 1) throw ConfigError("kolmogorov forcing requires m >= 1");
    if (m > grid.modes(1) / 2 - 1)
        throw ConfigError("kolmogorov forcing mode m = " + std::to_string(m) +
                          " not resolvable with " + std::to_string(grid.modes(1)) +
                          " modes on axis 1");
    SpectralField f(grid, FieldRole::forcing);
    // sin(m y) = (e^{imy} - e^{-imy}) / (2i), amplitude m^4 / Re.
    const double amp = std::pow(static_cast<double>(m), 4) / reynolds;
    f.at_mode(Wavevector(0, m, 0)) = std::complex<double>(0.0, -0.5 * amp);
    f.at_mode(Wavevector(0, -m, 0)) = std::complex<double>(0.0, 0.5 * amp);
    return f;
}

double ManufacturedSolution::amp(double t) const {
    return amplitude == Amplitude::cos_t ? std::cos(t) : 1.0;
}

double ManufacturedSolution::amp_dot(double t) const {
    return amplitude == Amplitude::cos_t ? -std::sin(t) : 0.0;
}

namespace {

// Fills the 2^dim corner modes (+-m, ..., +-m) of the cosine-product pattern,
// each with coefficient value * (1/2)^dim, scaled per-mode by fn(kx, ky, kz).
template <typename Fn>
SpectralField cosine_product_modes(const Grid& grid, int m, double value, Fn&& per_mode) {
    SpectralField out(grid);
    const int corners = grid.dim() == 2 ? 4 : 8;
    const double base = value / static_cast<double>(1 << grid.dim());
    for (int c = 0; c < corners; ++c) {
        Wavevector kappa((c & 1) ? m : -m, (c & 2) ? m : -m,
                         grid.dim() == 3 ? ((c & 4) ? m : -m) : 0);
        if (!kappa.in_range(grid))
            throw ConfigError("manufactured mode not resolvable on this grid");
        std::array<double, 3> k{};
        for (int a = 0; a < grid.dim(); ++a)
            k[a] = grid.wavenumber_unit(a) * kappa.components[a];
        out.at_mode(kappa) = base * per_mode(k[0], k[1], k[2]);
    }
    return out;
}

}  // namespace

SpectralField manufactured_psi(const ManufacturedSolution& ms, double t, const Grid& grid) {
    SpectralField psi = cosine_product_modes(grid, ms.mode, ms.amp(t),
                                             [](double, double, double) { return 1.0; });
    psi.set_role(FieldRole::streamfunction);
    return psi;
}

SpectralField manufactured_omega(const ManufacturedSolution& ms, double t, const Grid& grid,
                                 const ModelSpec& model) {
    SpectralField omega = apply_elliptic(manufactured_psi(ms, t, grid), model.elliptic_froude());
    omega.set_role(FieldRole::vorticity);
    return omega;
}

SpectralField manufactured_forcing(const ManufacturedSolution& ms, double t,
                                   const ModelSpec& model, const Grid& grid) {
    // f = d(omega_e)/dt + A omega_e + N(omega_e). The pattern is an elliptic
    // eigenfunction, so omega_e is proportional to psi_e and the Jacobian part
    // of N vanishes identically; only the beta term survives.
    const double f2 = model.elliptic_froude() * model.elliptic_froude();
    const double a = ms.amp(t);
    const double a_dot = ms.amp_dot(t);
    SpectralField f = cosine_product_modes(
        grid, ms.mode, 1.0, [&](double kx, double ky, double kz) -> std::complex<double> {
            const double elliptic = kx * kx + ky * ky + f2 * kz * kz;
            const double dissip = model.dissipation_symbol(kx, ky, kz);
            return (a_dot + a * dissip) * elliptic +
                   model.beta * a * std::complex<double>(0.0, kx);
        });
    f.set_role(FieldRole::forcing);
    return f;
}

ForcingField::ForcingField(const ForcingSpec& spec, const ModelSpec& model, const Grid& grid,
                           double reynolds)
    : spec_(spec), model_(model), grid_(grid), cached_(grid, FieldRole::forcing) {
    switch (spec_.kind) {
        case ForcingSpec::Kind::none:
            break;
        case ForcingSpec::Kind::kolmogorov:
            cached_ = kolmogorov_vorticity_forcing(spec_.kolmogorov_m, reynolds, grid_);
            break;
        case ForcingSpec::Kind::manufactured:
            if (!spec_.time_dependent())
                cached_ = manufactured_forcing(spec_.manufactured, 0.0, model_, grid_);
            break;
        case ForcingSpec::Kind::custom:
            cached_ = read_field(spec_.custom_path, grid_);
            break;
    }
}

SpectralField ForcingField::operator()(double t) const {
    if (spec_.kind == ForcingSpec::Kind::manufactured && spec_.time_dependent())
        return manufactured_forcing(spec_.manufactured, t, model_, grid_);
    return cached_;
}

namespace {

SpectralField preset_psi(InitialConditionPreset preset, const Grid& grid) {
    std::vector<double> psi(grid.point_count());
    const int n0 = grid.modes(0), n1 = grid.modes(1), n2 = grid.dim() == 3 ? grid.modes(2) : 1;
    for (int i = 0; i < n0; ++i) {
        const double x = grid.coordinate(0, i);
        for (int j = 0; j < n1; ++j) {
            const double y = grid.coordinate(1, j);
            double v = 0.0;
            if (preset == InitialConditionPreset::kolmogorov_perturbed_a)
                v = std::sin(2.0 * y) + 0.001 * std::sin(2.0 * x) * std::sin(2.0 * y);
            else if (preset == InitialConditionPreset::kolmogorov_perturbed_b)
                v = std::sin(2.0 * y) + 0.001 * std::sin(2.0 * M_PI * x) * std::sin(2.0 * M_PI * y);
            for (int k = 0; k < n2; ++k) psi[grid.flat_index(i, j, k)] = v;
        }
    }
    return forward_transform(grid, psi, FieldRole::streamfunction);
}

}  // namespace

SpectralField initial_condition(InitialConditionPreset preset, const Grid& grid,
                                const ModelSpec& model, const ManufacturedSolution* ms) {
    switch (preset) {
        case InitialConditionPreset::zero: {
            SpectralField omega(grid, FieldRole::vorticity);
            return omega;
        }
        case InitialConditionPreset::manufactured_t0: {
            if (!ms) throw ConfigError("manufactured initial condition needs a solution descriptor");
            return manufactured_omega(*ms, 0.0, grid, model);
        }
        case InitialConditionPreset::kolmogorov_perturbed_a:
        case InitialConditionPreset::kolmogorov_perturbed_b: {
            SpectralField omega = apply_elliptic(preset_psi(preset, grid), model.elliptic_froude());
            omega.set_role(FieldRole::vorticity);
            return project_mean_zero(std::move(omega));
        }
    }
    throw ConfigError("unknown initial condition preset");
}

}  // namespace mrsav
