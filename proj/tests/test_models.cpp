#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mrsav/errors.hpp"
#include "mrsav/fft.hpp"
#include "mrsav/model.hpp"
#include "mrsav/spectral_ops.hpp"
#include "mrsav/stepper.hpp"

using namespace mrsav;

namespace {

Grid grid2d(int n, double length = 2.0 * M_PI) {
    return Grid(2, {length, length, 0.0}, {n, n, 1});
}

Grid grid3d(int n, double length = 2.0 * M_PI) {
    return Grid(3, {length, length, length}, {n, n, n});
}

std::vector<double> sample2d(const Grid& g, double (*f)(double, double)) {
    std::vector<double> v(g.point_count());
    for (int i = 0; i < g.modes(0); ++i)
        for (int j = 0; j < g.modes(1); ++j)
            v[g.flat_index(i, j)] = f(g.coordinate(0, i), g.coordinate(1, j));
    return v;
}

SpectralField band_limited_random(const Grid& g, int max_index, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(g.point_count());
    for (auto& x : v) x = dist(rng);
    SpectralField f = forward_transform(g, v);
    for (int i = 0; i < g.modes(0); ++i)
        for (int j = 0; j < g.modes(1); ++j)
            if (std::abs(g.signed_index(0, i)) > max_index ||
                std::abs(g.signed_index(1, j)) > max_index)
                f.at(i, j) = 0.0;
    return project_mean_zero(std::move(f));
}

}  // namespace

TEST_CASE("nonlinear term vanishes for y-only fields without beta") {
    Grid g = grid2d(16);
    ModelSpec model = ModelSpec::qg2d(10.0);
    SpectralField psi =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(y); }));
    SpectralField omega =
        forward_transform(g, sample2d(g, [](double, double y) { return 2.0 * std::sin(y); }));
    CHECK(nonlinear_term(psi, omega, model).max_abs() < 1e-14);
}

TEST_CASE("beta term contributes psi_x inside the bracket") {
    Grid g = grid2d(16);
    ModelSpec model = ModelSpec::qg2d(10.0, 1.0);
    SpectralField psi = forward_transform(g, sample2d(g, [](double x, double) { return std::sin(x); }));
    SpectralField omega = psi;  // omega = -Lap psi = sin x as well
    auto n = inverse_transform(nonlinear_term(psi, omega, model));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(n[g.flat_index(i, j)] ==
                  doctest::Approx(std::cos(g.coordinate(0, i))).epsilon(1e-12));
}

TEST_CASE("nonlinear term is skew-symmetric on consistent band-limited pairs") {
    Grid g = grid2d(32);
    ModelSpec model = ModelSpec::qg2d(10.0, 0.8);
    for (unsigned seed : {1u, 2u, 3u}) {
        SpectralField omega = band_limited_random(g, 7, seed);
        omega.set_role(FieldRole::vorticity);
        SpectralField psi = invert_elliptic(omega);
        const double bracket = inner_product_l2(nonlinear_term(psi, omega, model), omega);
        const double scale = sobolev_norm_sq(omega, 1) * (1.0 + std::sqrt(sobolev_norm_sq(psi, 1)));
        CHECK(std::abs(bracket) <= 1e-10 * scale);
    }
}

TEST_CASE("kolmogorov forcing is the curl of the velocity forcing") {
    Grid g = grid2d(32);
    auto f = inverse_transform(kolmogorov_vorticity_forcing(2, 100.0, g));
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            CHECK(f[g.flat_index(i, j)] ==
                  doctest::Approx(0.16 * std::sin(2.0 * g.coordinate(1, j))).epsilon(1e-12));

    auto f1 = inverse_transform(kolmogorov_vorticity_forcing(1, 1.0, g));
    for (int j = 0; j < 32; ++j)
        CHECK(f1[g.flat_index(3, j)] ==
              doctest::Approx(std::sin(g.coordinate(1, j))).epsilon(1e-12));

    CHECK_THROWS_AS(kolmogorov_vorticity_forcing(16, 1.0, g), ConfigError);
    CHECK_THROWS_AS(kolmogorov_vorticity_forcing(0, 1.0, g), ConfigError);
}

TEST_CASE("basic Kolmogorov flow is a steady state of the continuous equation") {
    Grid g = grid2d(32);
    const int m = 2;
    const double re = 37.0;
    ModelSpec model = ModelSpec::qg2d(re);
    // omega* = m^2 sin(my), psi* = sin(my)
    SpectralField psi =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(2.0 * y); }));
    SpectralField omega = apply_elliptic(psi);
    omega.set_role(FieldRole::vorticity);

    // residual of A omega + N(omega) - F, with q = 1
    SpectralField forcing = kolmogorov_vorticity_forcing(m, re, g);
    SpectralField n = nonlinear_term(psi, omega, model);
    double residual = 0.0;
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            const double kx = g.wavenumber(0, i), ky = g.wavenumber(1, j);
            const auto r = model.dissipation_symbol(kx, ky, 0.0) * omega.at(i, j) + n.at(i, j) -
                           forcing.at(i, j);
            residual = std::max(residual, std::abs(r));
        }
    CHECK(residual < 1e-12 * omega.max_abs());
}

TEST_CASE("basic Kolmogorov flow is a discrete fixed point of step_bdf2") {
    Grid g = grid2d(32);
    const double re = 60.0;
    ModelSpec model = ModelSpec::qg2d(re);
    StepperParams params;
    params.k = 0.05;
    params.gamma = 20.0;
    ForcingSpec fspec;
    fspec.kind = ForcingSpec::Kind::kolmogorov;
    fspec.kolmogorov_m = 2;
    ForcingField forcing(fspec, model, g, re);

    SpectralField psi =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(2.0 * y); }));
    SpectralField omega_star = apply_elliptic(psi);
    omega_star.set_role(FieldRole::vorticity);

    TwoLevelState state(omega_star, omega_star, 1.0, 1.0, 1);
    for (int n = 0; n < 10; ++n) state = step_bdf2(state, model, forcing, params);
    CHECK((state.u_curr - omega_star).max_abs() < 1e-10 * omega_star.max_abs());
    CHECK(std::abs(state.q_curr - 1.0) < 1e-12);
}

TEST_CASE("manufactured omega is the elliptic image of psi") {
    Grid g3(3, {1.0, 1.0, 1.0}, {16, 16, 16});
    ModelSpec model = ModelSpec::cqg3d(10.0, 1.0, 1.0);
    ManufacturedSolution ms;
    SpectralField psi = manufactured_psi(ms, 0.3, g3);
    SpectralField omega = manufactured_omega(ms, 0.3, g3, model);
    // omega_e = 12 pi^2 psi_e for the unit-cube triple-cosine family at F = 1
    double err = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i)
        err = std::max(err, std::abs(omega[i] - 12.0 * M_PI * M_PI * psi[i]));
    CHECK(err < 1e-12 * omega.max_abs());
}

TEST_CASE("manufactured psi matches the closed-form sample") {
    Grid g(2, {1.0, 1.0, 0.0}, {32, 32, 1});
    ManufacturedSolution ms;
    const double t = 1.7;
    auto psi = inverse_transform(manufactured_psi(ms, t, g));
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            const double x = g.coordinate(0, i), y = g.coordinate(1, j);
            CHECK(psi[g.flat_index(i, j)] ==
                  doctest::Approx(std::cos(t) * std::cos(2.0 * M_PI * x) *
                                  std::cos(2.0 * M_PI * y))
                      .epsilon(1e-12));
        }
}

TEST_CASE("time-independent manufactured forcing is the pure dissipation residual") {
    Grid g(2, {1.0, 1.0, 0.0}, {16, 16, 1});
    ModelSpec model = ModelSpec::qg2d(1.0);  // nu = 1, beta = 0 so N vanishes
    ManufacturedSolution ms;
    ms.amplitude = ManufacturedSolution::Amplitude::unit;
    SpectralField f = manufactured_forcing(ms, 5.0, model, g);
    SpectralField omega = manufactured_omega(ms, 5.0, g, model);
    // f = A omega_e, with A = -nu Lap having eigenvalue nu * 8 pi^2 here
    double err = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        err = std::max(err, std::abs(f[i] - 8.0 * M_PI * M_PI * omega[i]));
    CHECK(err < 1e-10 * f.max_abs());
}

TEST_CASE("manufactured forcing matches a symbolic oracle pointwise, 2D") {
    Grid g(2, {1.0, 1.0, 0.0}, {32, 32, 1});
    const double re = 10.0;
    ModelSpec model = ModelSpec::qg2d(re);
    ManufacturedSolution ms;
    for (double t : {0.0, 0.4}) {
        auto f = inverse_transform(manufactured_forcing(ms, t, model, g));
        // Hand-derived: omega_e = 8 pi^2 cos t cosX cosY;
        // f = d/dt omega_e + nu * 8 pi^2 * omega_e   (Jacobian vanishes, beta = 0)
        auto oracle = [&](double x, double y) {
            const double pattern = std::cos(2.0 * M_PI * x) * std::cos(2.0 * M_PI * y);
            const double lam = 8.0 * M_PI * M_PI;
            return lam * pattern * (-std::sin(t) + (lam / re) * std::cos(t));
        };
        for (int i = 0; i < 32; i += 5)
            for (int j = 0; j < 32; j += 7) {
                const double x = g.coordinate(0, i), y = g.coordinate(1, j);
                CHECK(f[g.flat_index(i, j)] == doctest::Approx(oracle(x, y)).epsilon(1e-12));
            }
        // the spec's spot check at x = y = 1/4 (the pattern's zero crossing)
        CHECK(std::abs(f[g.flat_index(8, 8)]) < 1e-10);
    }
}

TEST_CASE("manufactured forcing matches a symbolic oracle pointwise, 3D with beta") {
    Grid g(3, {1.0, 1.0, 1.0}, {16, 16, 16});
    const double re = 10.0;
    ModelSpec model = ModelSpec::cqg3d(re, 1.0, 1.0);
    ManufacturedSolution ms;
    const double t = 0.9;
    auto f = inverse_transform(manufactured_forcing(ms, t, model, g));
    auto oracle = [&](double x, double y, double z) {
        const double cx = std::cos(2.0 * M_PI * x), cy = std::cos(2.0 * M_PI * y),
                     cz = std::cos(2.0 * M_PI * z);
        const double lam = 12.0 * M_PI * M_PI;  // elliptic eigenvalue at F = 1
        const double dissip = lam / re;         // nu_h |k_h|^2 + nu_v kz^2 = 12 pi^2 / re
        const double jacobian_part = lam * cx * cy * cz * (-std::sin(t) + dissip * std::cos(t));
        const double beta_part =
            -2.0 * M_PI * std::cos(t) * std::sin(2.0 * M_PI * x) * cy * cz;
        return jacobian_part + beta_part;
    };
    for (int i = 0; i < 16; i += 3)
        for (int j = 0; j < 16; j += 5)
            for (int k = 0; k < 16; k += 7) {
                const double x = g.coordinate(0, i), y = g.coordinate(1, j),
                             z = g.coordinate(2, k);
                CHECK(f[g.flat_index(i, j, k)] ==
                      doctest::Approx(oracle(x, y, z)).epsilon(1e-11));
            }
}

TEST_CASE("initial condition presets") {
    Grid g = grid2d(32);
    ModelSpec model = ModelSpec::qg2d(100.0);

    CHECK(initial_condition(InitialConditionPreset::zero, g, model).max_abs() == 0.0);

    auto omega = inverse_transform(
        initial_condition(InitialConditionPreset::kolmogorov_perturbed_a, g, model));
    for (int i = 0; i < 32; i += 3)
        for (int j = 0; j < 32; j += 3) {
            const double x = g.coordinate(0, i), y = g.coordinate(1, j);
            const double expect =
                4.0 * std::sin(2.0 * y) + 0.001 * 8.0 * std::sin(2.0 * x) * std::sin(2.0 * y);
            CHECK(omega[g.flat_index(i, j)] == doctest::Approx(expect).epsilon(1e-12));
        }

    // perturbed_b samples the stated stream function as-is
    SpectralField b =
        initial_condition(InitialConditionPreset::kolmogorov_perturbed_b, g, model);
    CHECK(std::abs(b.zero_mode()) == 0.0);
    CHECK(b.is_finite());

    Grid g3(3, {1.0, 1.0, 1.0}, {16, 16, 16});
    ModelSpec m3 = ModelSpec::cqg3d(10.0, 1.0, 1.0);
    ManufacturedSolution ms;
    SpectralField init = initial_condition(InitialConditionPreset::manufactured_t0, g3, m3, &ms);
    SpectralField psi = manufactured_psi(ms, 0.0, g3);
    double err = 0.0;
    for (std::size_t i = 0; i < init.size(); ++i)
        err = std::max(err, std::abs(init[i] - 12.0 * M_PI * M_PI * psi[i]));
    CHECK(err < 1e-12 * init.max_abs());
}

TEST_CASE("one BDF2 step from exact history has third-order local error") {
    Grid g(2, {1.0, 1.0, 0.0}, {32, 32, 1});
    ModelSpec model = ModelSpec::qg2d(10.0);
    ManufacturedSolution ms;
    ForcingSpec fspec;
    fspec.kind = ForcingSpec::Kind::manufactured;
    fspec.manufactured = ms;
    ForcingField forcing(fspec, model, g, 10.0);

    // Seed at a generic phase t0 (a multiple of k so the stepper's t = n*k
    // bookkeeping lines up); at t0 = 0 the amplitude's third derivative
    // vanishes and the leading truncation term cancels.
    auto one_step_error = [&](double k, std::int64_t n0) {
        StepperParams params;
        params.k = k;
        params.gamma = 1000.0;
        const double t0 = static_cast<double>(n0) * k;
        TwoLevelState seeded(manufactured_omega(ms, t0 + k, g, model),
                             manufactured_omega(ms, t0, g, model), 1.0, 1.0, n0 + 1);
        TwoLevelState next = step_bdf2(seeded, model, forcing, params);
        SpectralField exact = manufactured_omega(ms, t0 + 2.0 * k, g, model);
        return std::sqrt(sobolev_norm_sq(next.u_curr - exact, 0));
    };

    const double e1 = one_step_error(0.02, 35);  // t0 = 0.7
    const double e2 = one_step_error(0.01, 70);
    const double ratio = e1 / e2;
    CHECK(ratio > 6.5);
    CHECK(ratio < 9.5);
}
