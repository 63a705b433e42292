#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mrsav/errors.hpp"
#include "mrsav/fft.hpp"
#include "mrsav/model.hpp"
#include "mrsav/spectral_ops.hpp"

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

std::vector<double> random_real(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(g.point_count());
    for (auto& x : v) x = dist(rng);
    return v;
}

// Random field with spectral support limited to |s| <= max_index per axis,
// built from explicit sine/cosine samples so tests own an analytic form.
struct TrigPoly {
    struct Term {
        double amp;
        std::array<int, 3> k;
        std::array<double, 3> phase;
    };
    std::vector<Term> terms;

    double eval(const Grid& g, std::array<double, 3> x) const {
        double v = 0.0;
        for (const auto& t : terms) {
            double arg = 0.0;
            for (int a = 0; a < g.dim(); ++a)
                arg += g.wavenumber_unit(a) * t.k[a] * x[a] + t.phase[a];
            v += t.amp * std::cos(arg);
        }
        return v;
    }
    double eval_dx(const Grid& g, std::array<double, 3> x, int axis) const {
        double v = 0.0;
        for (const auto& t : terms) {
            double arg = 0.0;
            for (int a = 0; a < g.dim(); ++a)
                arg += g.wavenumber_unit(a) * t.k[a] * x[a] + t.phase[a];
            v += -t.amp * g.wavenumber_unit(axis) * t.k[axis] * std::sin(arg);
        }
        return v;
    }
};

TrigPoly random_trig(const Grid& g, int max_index, unsigned seed, int n_terms = 6) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_int_distribution<int> idx(-max_index, max_index);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    TrigPoly p;
    for (int t = 0; t < n_terms; ++t) {
        TrigPoly::Term term;
        term.amp = amp(rng);
        for (int a = 0; a < 3; ++a) {
            term.k[a] = a < g.dim() ? idx(rng) : 0;
            term.phase[a] = ph(rng);
        }
        p.terms.push_back(term);
    }
    return p;
}

std::vector<double> sample_poly(const Grid& g, const TrigPoly& p) {
    std::vector<double> v(g.point_count());
    const int n2 = g.dim() == 3 ? g.modes(2) : 1;
    for (int i = 0; i < g.modes(0); ++i)
        for (int j = 0; j < g.modes(1); ++j)
            for (int k = 0; k < n2; ++k)
                v[g.flat_index(i, j, k)] =
                    p.eval(g, {g.coordinate(0, i), g.coordinate(1, j),
                               g.dim() == 3 ? g.coordinate(2, k) : 0.0});
    return v;
}

}  // namespace

TEST_CASE("grid invariants are enforced") {
    CHECK_THROWS_AS(Grid(2, {1.0, 1.0, 0.0}, {3, 8, 1}), ConfigError);
    CHECK_THROWS_AS(Grid(2, {1.0, 1.0, 0.0}, {2, 8, 1}), ConfigError);
    CHECK_THROWS_AS(Grid(2, {0.0, 1.0, 0.0}, {8, 8, 1}), ConfigError);
    CHECK_THROWS_AS(Grid(4, {1.0, 1.0, 1.0}, {8, 8, 8}), ConfigError);
    Grid g = grid2d(8);
    CHECK(g.signed_index(0, 3) == 3);
    CHECK(g.signed_index(0, 4) == -4);
    CHECK(g.signed_index(0, 7) == -1);
    CHECK(g.wavenumber(0, 7) == doctest::Approx(-1.0));
}

TEST_CASE("forward transform of a constant is the mean") {
    Grid g = grid2d(16);
    std::vector<double> v(g.point_count(), 3.25);
    SpectralField f = forward_transform(g, v);
    CHECK(f.zero_mode().real() == doctest::Approx(3.25).epsilon(1e-14));
    CHECK(f.zero_mode().imag() == doctest::Approx(0.0).epsilon(1e-14));
    double rest = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) rest = std::max(rest, std::abs(f[i]));
    CHECK(rest < 1e-14);
}

TEST_CASE("sin(x) lands on the (+-1, 0) modes with magnitude 1/2") {
    Grid g = grid2d(16);
    auto v = sample2d(g, [](double x, double) { return std::sin(x); });
    SpectralField f = forward_transform(g, v);
    auto plus = f.at_mode(Wavevector(1, 0));
    auto minus = f.at_mode(Wavevector(-1, 0));
    CHECK(std::abs(plus - std::complex<double>(0.0, -0.5)) < 1e-14);
    CHECK(std::abs(minus - std::complex<double>(0.0, 0.5)) < 1e-14);
    double rest = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            if ((g.signed_index(0, i) == 1 || g.signed_index(0, i) == -1) &&
                g.signed_index(1, j) == 0)
                continue;
            rest = std::max(rest, std::abs(f.at(i, j)));
        }
    CHECK(rest < 1e-14);
}

TEST_CASE("round trip is the identity on random real fields") {
    for (int n : {8, 12, 16}) {
        Grid g = grid2d(n);
        auto v = random_real(g, 42 + static_cast<unsigned>(n));
        auto w = inverse_transform(forward_transform(g, v));
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            err = std::max(err, std::abs(v[i] - w[i]));
            scale = std::max(scale, std::abs(v[i]));
        }
        CHECK(err < 1e-12 * scale);
    }
    Grid g3 = grid3d(8);
    auto v = random_real(g3, 7);
    auto w = inverse_transform(forward_transform(g3, v));
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(w[i]).epsilon(1e-12));
}

TEST_CASE("non-square grids keep axes straight") {
    Grid g(2, {2.0 * M_PI, 4.0 * M_PI, 0.0}, {12, 20, 1});
    auto v = random_real(g, 88);
    auto w = inverse_transform(forward_transform(g, v));
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(w[i]).epsilon(1e-12));

    // wavenumber on axis 1 is pi * index because the length is 4 pi
    auto f = sample2d(g, [](double, double y) { return std::sin(0.5 * y); });
    SpectralField s = forward_transform(g, f);
    CHECK(std::abs(s.at_mode(Wavevector(0, 1)) - std::complex<double>(0.0, -0.5)) < 1e-13);
    auto dy = inverse_transform(partial_derivative(s, 1, 1));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 20; ++j)
            CHECK(dy[g.flat_index(i, j)] ==
                  doctest::Approx(0.5 * std::cos(0.5 * g.coordinate(1, j))).epsilon(1e-12));

    // Jacobian of x- and y-aligned single modes on the anisotropic box
    SpectralField psi = forward_transform(g, sample2d(g, [](double x, double) { return std::sin(x); }));
    SpectralField omega =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(0.5 * y); }));
    auto jac = inverse_transform(pseudo_spectral_jacobian(psi, omega));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 20; ++j) {
            const double expect =
                std::cos(g.coordinate(0, i)) * 0.5 * std::cos(0.5 * g.coordinate(1, j));
            CHECK(jac[g.flat_index(i, j)] == doctest::Approx(expect).epsilon(1e-12));
        }
}

TEST_CASE("forward transform of real data is conjugate-symmetric") {
    Grid g = grid2d(12);
    SpectralField f = forward_transform(g, random_real(g, 5));
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            const int si = g.signed_index(0, i), sj = g.signed_index(1, j);
            if (si == -6 || sj == -6) continue;  // Nyquist has no partner
            auto a = f.at(g.storage_index(0, si), g.storage_index(1, sj));
            auto b = f.at(g.storage_index(0, -si), g.storage_index(1, -sj));
            CHECK(std::abs(a - std::conj(b)) < 1e-13);
        }
}

TEST_CASE("transform rejects shape mismatches") {
    Grid g = grid2d(8);
    std::vector<double> wrong(17);
    CHECK_THROWS_AS(forward_transform(g, wrong), ConfigError);
}

TEST_CASE("partial_derivative matches calculus on simple fields") {
    Grid g = grid2d(16);
    SpectralField f = forward_transform(g, sample2d(g, [](double x, double) { return std::sin(x); }));
    auto dx = inverse_transform(partial_derivative(f, 0, 1));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(dx[g.flat_index(i, j)] ==
                  doctest::Approx(std::cos(g.coordinate(0, i))).epsilon(1e-12));

    SpectralField c = forward_transform(g, std::vector<double>(g.point_count(), 2.0));
    CHECK(partial_derivative(c, 0, 1).max_abs() < 1e-14);
    CHECK(partial_derivative(c, 1, 2).max_abs() < 1e-14);

    SpectralField s2 =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(2.0 * y); }));
    auto d2 = inverse_transform(partial_derivative(s2, 1, 2));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(d2[g.flat_index(i, j)] ==
                  doctest::Approx(-4.0 * std::sin(2.0 * g.coordinate(1, j))).epsilon(1e-12));
}

TEST_CASE("first derivatives zero the Nyquist mode, second keep it") {
    Grid g = grid2d(8);
    SpectralField f(g);
    f.at_mode(Wavevector(-4, 0)) = 1.0;  // pure Nyquist content on axis 0
    CHECK(partial_derivative(f, 0, 1).max_abs() == 0.0);
    SpectralField d2 = partial_derivative(f, 0, 2);
    CHECK(std::abs(d2.at_mode(Wavevector(-4, 0)) - std::complex<double>(-16.0, 0.0)) < 1e-14);
}

TEST_CASE("differentiation is exact on resolved trig polynomials") {
    Grid g = grid2d(16);
    TrigPoly p = random_trig(g, 5, 99);
    SpectralField f = forward_transform(g, sample_poly(g, p));
    for (int axis : {0, 1}) {
        auto d = inverse_transform(partial_derivative(f, axis, 1));
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                const double exact =
                    p.eval_dx(g, {g.coordinate(0, i), g.coordinate(1, j), 0.0}, axis);
                CHECK(d[g.flat_index(i, j)] == doctest::Approx(exact).epsilon(1e-11));
            }
    }
}

TEST_CASE("invert_elliptic solves the 2D Poisson problem") {
    Grid g = grid2d(16);
    SpectralField omega = forward_transform(
        g, sample2d(g, [](double x, double y) { return std::sin(x + y); }), FieldRole::vorticity);
    auto psi = inverse_transform(invert_elliptic(omega));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(psi[g.flat_index(i, j)] ==
                  doctest::Approx(0.5 * std::sin(g.coordinate(0, i) + g.coordinate(1, j)))
                      .epsilon(1e-12));

    SpectralField constant =
        forward_transform(g, std::vector<double>(g.point_count(), 4.0), FieldRole::vorticity);
    CHECK(invert_elliptic(constant).max_abs() < 1e-14);
}

TEST_CASE("invert_elliptic handles the Froude-weighted 3D operator") {
    Grid g = grid3d(8);
    SpectralField omega(g, FieldRole::vorticity);
    omega.at_mode(Wavevector(1, 1, 1)) = 6.0;
    SpectralField psi = invert_elliptic(omega, 2.0);
    CHECK(std::abs(psi.at_mode(Wavevector(1, 1, 1)) - std::complex<double>(1.0, 0.0)) < 1e-14);

    SpectralField pure_z(g, FieldRole::vorticity);
    pure_z.at_mode(Wavevector(0, 0, 2)) = 1.0;
    CHECK_THROWS_AS(invert_elliptic(pure_z, 0.0), NumericFault);
}

TEST_CASE("elliptic inverse composed with forward operator is the mean-zero projection") {
    for (int dim : {2, 3}) {
        Grid g = dim == 2 ? grid2d(12) : grid3d(8);
        auto v = random_real(g, 31u + static_cast<unsigned>(dim));
        SpectralField omega = forward_transform(g, v, FieldRole::vorticity);
        const double froude = dim == 3 ? 1.5 : 0.0;
        SpectralField back = apply_elliptic(invert_elliptic(omega, froude), froude);
        SpectralField expect = project_mean_zero(omega);
        double err = 0.0;
        for (std::size_t i = 0; i < back.size(); ++i)
            err = std::max(err, std::abs(back[i] - expect[i]));
        CHECK(err < 1e-12 * (1.0 + expect.max_abs()));
    }
}

TEST_CASE("helmholtz_solve inverts (sigma + A) mode by mode") {
    Grid g = grid2d(8);
    ModelSpec model = ModelSpec::qg2d(1.0);  // nu = 1

    SpectralField rhs(g);
    rhs.at_mode(Wavevector(1, 0)) = 1.0;
    SpectralField u = helmholtz_solve(rhs, 3.0, model);  // sigma = 3/(2k) with k = 0.5
    CHECK(std::abs(u.at_mode(Wavevector(1, 0)) - std::complex<double>(0.25, 0.0)) < 1e-15);

    SpectralField zero(g);
    CHECK(helmholtz_solve(zero, 3.0, model).max_abs() == 0.0);
}

TEST_CASE("helmholtz residual vanishes for random rhs, isotropic and anisotropic") {
    Grid g2 = grid2d(8);
    ModelSpec m2 = ModelSpec::qg2d(50.0);
    SpectralField rhs2 = forward_transform(g2, random_real(g2, 11));
    const double sigma = 3.0 / (2.0 * 0.01);
    SpectralField u2 = helmholtz_solve(rhs2, sigma, m2);
    double err = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double kx = g2.wavenumber(0, i), ky = g2.wavenumber(1, j);
            const auto residual =
                (sigma + m2.dissipation_symbol(kx, ky, 0.0)) * u2.at(i, j) - rhs2.at(i, j);
            err = std::max(err, std::abs(residual));
        }
    CHECK(err < 1e-12 * rhs2.max_abs());

    Grid g3 = grid3d(8);
    ModelSpec m3 = ModelSpec::cqg3d(10.0, 1.0, 1.0);
    m3.nu_h = 0.2;
    m3.nu_v = 0.05;
    SpectralField rhs3 = forward_transform(g3, random_real(g3, 12));
    SpectralField u3 = helmholtz_solve(rhs3, sigma, m3);
    err = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                const double kx = g3.wavenumber(0, i), ky = g3.wavenumber(1, j),
                             kz = g3.wavenumber(2, k);
                const auto residual =
                    (sigma + m3.dissipation_symbol(kx, ky, kz)) * u3.at(i, j, k) -
                    rhs3.at(i, j, k);
                err = std::max(err, std::abs(residual));
            }
    CHECK(err < 1e-12 * rhs3.max_abs());

    SpectralField bad(g2);
    bad[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(helmholtz_solve(bad, sigma, m2), NumericFault);
}

TEST_CASE("jacobian of sin x and sin y is cos x cos y") {
    Grid g = grid2d(16);
    SpectralField psi = forward_transform(g, sample2d(g, [](double x, double) { return std::sin(x); }));
    SpectralField omega =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(y); }));
    auto j = inverse_transform(pseudo_spectral_jacobian(psi, omega));
    for (int i = 0; i < 16; ++i)
        for (int jj = 0; jj < 16; ++jj)
            CHECK(j[g.flat_index(i, jj)] ==
                  doctest::Approx(std::cos(g.coordinate(0, i)) * std::cos(g.coordinate(1, jj)))
                      .epsilon(1e-12));
}

TEST_CASE("jacobian vanishes for parallel gradients") {
    Grid g = grid2d(16);
    SpectralField psi =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(y); }));
    SpectralField omega = forward_transform(
        g, sample2d(g, [](double, double y) { return std::cos(2.0 * y) + 0.5 * std::sin(y); }));
    CHECK(pseudo_spectral_jacobian(psi, omega).max_abs() < 1e-14);
}

TEST_CASE("jacobian is skew-symmetric on band-limited fields") {
    Grid g = grid2d(16);
    // Support within |s| <= 4 = N/4 keeps products exactly resolved.
    SpectralField psi = forward_transform(g, sample_poly(g, random_trig(g, 4, 201)));
    SpectralField omega = forward_transform(g, sample_poly(g, random_trig(g, 4, 202)));
    const double bracket = inner_product_l2(pseudo_spectral_jacobian(psi, omega), omega);
    const double scale = std::sqrt(sobolev_norm_sq(psi, 1)) * sobolev_norm_sq(omega, 1);
    CHECK(std::abs(bracket) <= 1e-10 * (1.0 + scale));

    // Periodic integration by parts: <beta psi_x, omega> = 0 when omega = -Lap psi.
    SpectralField omega_c = apply_elliptic(psi);
    const double beta_term = inner_product_l2(partial_derivative(psi, 0, 1), omega_c);
    CHECK(std::abs(beta_term) <= 1e-12 * (1.0 + sobolev_norm_sq(psi, 1)));
}

TEST_CASE("inner product agrees with collocation quadrature") {
    Grid g = grid2d(16);
    SpectralField s = forward_transform(g, sample2d(g, [](double x, double) { return std::sin(x); }));
    CHECK(inner_product_l2(s, s) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));

    SpectralField t =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(3.0 * y); }));
    CHECK(std::abs(inner_product_l2(s, t)) < 1e-14);

    auto fv = random_real(g, 21);
    auto gv = random_real(g, 22);
    SpectralField f = forward_transform(g, fv);
    SpectralField h = forward_transform(g, gv);
    long double quad = 0.0L;
    for (std::size_t i = 0; i < fv.size(); ++i) quad += fv[i] * gv[i];
    const double quadrature =
        static_cast<double>(quad) * g.volume() / static_cast<double>(g.point_count());
    CHECK(inner_product_l2(f, h) == doctest::Approx(quadrature).epsilon(1e-10));
}

TEST_CASE("sobolev norms weight modes as specified") {
    Grid g = grid2d(16);
    SpectralField s = forward_transform(g, sample2d(g, [](double x, double) { return std::sin(x); }));
    CHECK(sobolev_norm_sq(s, 1) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));

    SpectralField s2 =
        forward_transform(g, sample2d(g, [](double, double y) { return std::sin(2.0 * y); }));
    CHECK(sobolev_norm_sq(s2, -1) == doctest::Approx(2.0 * M_PI * M_PI / 4.0).epsilon(1e-13));

    SpectralField zero(g);
    CHECK(sobolev_norm_sq(zero, 0) == 0.0);
    CHECK(sobolev_norm_sq(zero, 1) == 0.0);

    SpectralField with_mean = forward_transform(g, std::vector<double>(g.point_count(), 1.0));
    CHECK_THROWS_AS(sobolev_norm_sq(with_mean, -1), ConfigError);
    CHECK(sobolev_norm_sq(with_mean, 0) == doctest::Approx(g.volume()).epsilon(1e-13));
}

TEST_CASE("project_mean_zero only clears the zero mode") {
    Grid g = grid2d(8);
    SpectralField f = forward_transform(
        g, sample2d(g, [](double x, double) { return 3.0 + std::sin(x); }));
    SpectralField p = project_mean_zero(f);
    CHECK(std::abs(p.zero_mode()) == 0.0);
    auto values = inverse_transform(p);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(values[g.flat_index(i, j)] ==
                  doctest::Approx(std::sin(g.coordinate(0, i))).epsilon(1e-12));
}

TEST_CASE("two-thirds dealiasing cutoff and idempotence") {
    Grid g = Grid(2, {2.0 * M_PI, 2.0 * M_PI, 0.0}, {32, 32, 1});
    SpectralField f(g);
    f.at_mode(Wavevector(10, 0)) = 1.0;   // inside floor(32/3) = 10
    f.at_mode(Wavevector(11, 0)) = 1.0;   // outside
    f.at_mode(Wavevector(0, -11)) = 1.0;  // outside
    SpectralField d = dealias_two_thirds(f);
    CHECK(std::abs(d.at_mode(Wavevector(10, 0))) == 1.0);
    CHECK(std::abs(d.at_mode(Wavevector(11, 0))) == 0.0);
    CHECK(std::abs(d.at_mode(Wavevector(0, -11))) == 0.0);

    SpectralField r = forward_transform(g, random_real(g, 3));
    SpectralField once = dealias_two_thirds(r);
    SpectralField twice = dealias_two_thirds(once);
    for (std::size_t i = 0; i < once.size(); ++i) CHECK(once[i] == twice[i]);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j)
            if (std::abs(g.signed_index(0, i)) > 10 || std::abs(g.signed_index(1, j)) > 10)
                CHECK(std::abs(once.at(i, j)) == 0.0);
}
