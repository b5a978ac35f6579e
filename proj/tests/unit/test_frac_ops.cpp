#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "clab/errors.hpp"
#include "clab/frac_ops.hpp"
#include "clab/spectral.hpp"
#include "clab/test_fields.hpp"

using namespace clab;
using frac::cplx;

namespace {

frac::TimeSeries<double> sample(double dt, std::size_t steps, double (*f)(double)) {
    frac::TimeSeries<double> u;
    u.dt = dt;
    for (std::size_t k = 0; k <= steps; ++k) u.values.push_back(f(dt * static_cast<double>(k)));
    return u;
}

double max_error_t2(double alpha, std::size_t steps) {
    const double dt = 1.0 / static_cast<double>(steps);
    const auto d = frac::caputo_l1(sample(dt, steps, [](double t) { return t * t; }), alpha);
    double err = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = dt * static_cast<double>(k);
        const double exact = 2.0 * std::pow(t, 2.0 - alpha) / std::tgamma(3.0 - alpha);
        err = std::max(err, std::abs(d.values[k] - exact));
    }
    return err;
}

}  // namespace

TEST_CASE("complex_power on the principal branch") {
    for (double a : {-1.3, 0.0, 0.25, 2.5}) CHECK(std::abs(frac::complex_power(1.0, a) - 1.0) < 1e-15);
    const cplx r = frac::complex_power(cplx(0.0, -1.0), 0.5);
    const double s = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(r - cplx(s, -s)) < 1e-15);
    // arg(-1) = pi, not -pi
    CHECK(std::abs(frac::complex_power(-1.0, 0.5) - cplx(0.0, 1.0)) < 1e-15);
    CHECK_THROWS_AS(frac::complex_power(0.0, 0.5), DomainError);
}

TEST_CASE("complex_power restricted to positive reals is the real power") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> x(1e-3, 50.0), a(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        const double base = x(rng), e = a(rng);
        const cplx r = frac::complex_power(base, e);
        CHECK(r.real() == doctest::Approx(std::pow(base, e)).epsilon(1e-15));
        CHECK(r.imag() == 0.0);
    }
}

TEST_CASE("caputo symbol is one at tau = 0 when tau0 = -1 and has positive real part") {
    CHECK(std::abs(frac::caputo_symbol(0.3, -1.0, 0.0) - 1.0) < 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> tau(-1e4, 1e4), alpha(0.01, 0.99), tau0(-5.0, -1e-3);
    for (int i = 0; i < 1000; ++i) CHECK(frac::caputo_symbol(alpha(rng), tau0(rng), tau(rng)).real() > 0.0);
}

TEST_CASE("principal caputo symbol") {
    const double a = 0.5;
    const cplx v = frac::principal_caputo_symbol(a, 4.0);
    CHECK(std::abs(v - 2.0 * std::exp(cplx(0.0, a * std::numbers::pi / 2.0))) < 1e-14);
    const cplx w = frac::principal_caputo_symbol(a, -4.0);
    CHECK(std::abs(w - std::conj(v)) < 1e-14);
    CHECK(frac::principal_caputo_symbol(a, 0.0) == cplx(0.0, 0.0));
}

TEST_CASE("lambda_alpha multiplier") {
    const std::vector<double> zero{0.0, 0.0};
    for (double m : {-2.0, 0.5, 3.0}) CHECK(std::abs(frac::lambda_alpha(0.4, m, 0.0, zero) - 1.0) < 1e-15);
    const std::vector<double> xi0{0.0};
    const cplx v = frac::lambda_alpha(0.5, 2.0, 1.0, xi0);
    CHECK(std::abs(v - std::pow(2.0, 0.25) * std::exp(cplx(0.0, std::numbers::pi / 8.0))) < 1e-14);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-30.0, 30.0), al(0.05, 0.95), mm(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const std::vector<double> xi{u(rng), u(rng)};
        const double tau = u(rng) * 100.0, alpha = al(rng), m = mm(rng);
        const cplx p = frac::lambda_alpha(alpha, m, tau, xi) * frac::lambda_alpha(alpha, -m, tau, xi);
        CHECK(std::abs(p - 1.0) < 1e-12);
    }
}

TEST_CASE("h multiplier") {
    CHECK(frac::h_multiplier(0.0) == 1.0);
    const double beta = 1e4;
    const double r = frac::h_multiplier(beta) / std::sqrt(beta);
    CHECK(r >= 1.0);
    CHECK(r <= 1.0000001);
    for (double s : {0.3, 7.0, 1e3}) CHECK(frac::h_multiplier(-s) == frac::h_multiplier(s));
}

TEST_CASE("L1 weights") {
    const auto b = frac::l1_weights(0.5, 4);
    REQUIRE(b.size() == 4);
    CHECK(b[0] == doctest::Approx(1.0));
    CHECK(b[1] == doctest::Approx(std::sqrt(2.0) - 1.0));
    CHECK(b[3] == doctest::Approx(2.0 - std::sqrt(3.0)));
}

TEST_CASE("caputo_l1 annihilates constants") {
    for (double alpha : {0.1, 0.5, 0.9}) {
        const auto d = frac::caputo_l1(sample(0.01, 100, [](double) { return 3.7; }), alpha);
        for (double v : d.values) CHECK(v == 0.0);
    }
}

TEST_CASE("caputo_l1 is exact on linear inputs") {
    for (double alpha : {0.25, 0.5, 0.75}) {
        const double dt = 1.0 / 64.0;
        const auto d = frac::caputo_l1(sample(dt, 64, [](double t) { return t; }), alpha);
        CHECK(d.values[0] == 0.0);
        for (std::size_t k = 1; k <= 64; ++k) {
            const double t = dt * static_cast<double>(k);
            const double exact = std::pow(t, 1.0 - alpha) / std::tgamma(2.0 - alpha);
            CHECK(std::abs(d.values[k] - exact) <= 1e-12 * std::max(1.0, exact));
        }
    }
}

TEST_CASE("caputo_l1 is exact on piecewise-linear inputs") {
    // kinked ramp: the L1 sum is the exact integral for piecewise-linear data on the grid
    const double alpha = 0.4, dt = 0.125;
    frac::TimeSeries<double> u{{0.0, 1.0, 1.5, 1.5, 0.5, 0.0, 2.0}, dt};
    const auto d = frac::caputo_l1(u, alpha);
    for (std::size_t k = 1; k < u.values.size(); ++k) {
        const double t = dt * static_cast<double>(k);
        // sum of slope_j * int_{t_j}^{t_{j+1}} (t - s)^{-alpha} ds / Gamma(1 - alpha)
        double exact = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double slope = (u.values[j + 1] - u.values[j]) / dt;
            const double a = t - dt * static_cast<double>(j), b = t - dt * static_cast<double>(j + 1);
            exact += slope * (std::pow(a, 1.0 - alpha) - std::pow(b, 1.0 - alpha)) / (1.0 - alpha);
        }
        exact /= std::tgamma(1.0 - alpha);
        CHECK(d.values[k] == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("caputo_l1 on t^2 converges with order 2 - alpha") {
    for (double alpha : {0.25, 0.4, 0.5, 0.75}) {
        std::vector<double> lx, ly;
        for (std::size_t steps : {64, 128, 256, 512}) {
            lx.push_back(std::log(1.0 / static_cast<double>(steps)));
            ly.push_back(std::log(max_error_t2(alpha, steps)));
        }
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / 4.0, my += ly[i] / 4.0;
        double num = 0, den = 0;
        for (std::size_t i = 0; i < lx.size(); ++i) num += (lx[i] - mx) * (ly[i] - my), den += (lx[i] - mx) * (lx[i] - mx);
        const double order = num / den;
        CAPTURE(alpha);
        CHECK(std::abs(order - (2.0 - alpha)) <= 0.15);
    }
    // halving dt at alpha = 0.4 shrinks the error by about 2^{1.6}
    const double ratio = max_error_t2(0.4, 256) / max_error_t2(0.4, 512);
    CHECK(ratio == doctest::Approx(std::pow(2.0, 1.6)).epsilon(0.1));
}

TEST_CASE("caputo_l1 complex input acts componentwise") {
    frac::TimeSeries<cplx> z;
    frac::TimeSeries<double> re, im;
    z.dt = re.dt = im.dt = 0.05;
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.05 * k;
        re.values.push_back(std::sin(t));
        im.values.push_back(t * t * t);
        z.values.emplace_back(std::sin(t), t * t * t);
    }
    const auto dz = frac::caputo_l1(z, 0.6);
    const auto dr = frac::caputo_l1(re, 0.6);
    const auto di = frac::caputo_l1(im, 0.6);
    for (std::size_t k = 0; k < dz.values.size(); ++k) {
        CHECK(dz.values[k].real() == doctest::Approx(dr.values[k]).epsilon(1e-14));
        CHECK(dz.values[k].imag() == doctest::Approx(di.values[k]).epsilon(1e-14));
    }
}

TEST_CASE("caputo_l1 rejects bad input") {
    frac::TimeSeries<double> u{{0.0, 1.0, 2.0}, 0.1};
    CHECK_THROWS_AS(frac::caputo_l1(u, 0.0), DomainError);
    CHECK_THROWS_AS(frac::caputo_l1(u, 1.0), DomainError);
    CHECK_THROWS_AS(frac::caputo_l1(frac::TimeSeries<double>{{1.0}, 0.1}, 0.5), DomainError);
}

TEST_CASE("Fourier multiplier of the conjugated Caputo derivative matches L1 in time") {
    // causal bump in a long zero-padded window
    const double alpha = 0.5, tau0 = -1.0;
    const std::size_t N = 4096;
    const double L = 32.0, dt = L / static_cast<double>(N);
    GridSpec g({Axis::time(N, dt)});
    const Field u = fields::bump_field(g, {{1.5}, {1.4}, 1.0});

    Field conj(g);
    frac::TimeSeries<double> series;
    series.dt = dt;
    for (std::size_t k = 0; k < N; ++k) {
        const double t = dt * static_cast<double>(k);
        conj[k] = std::exp(tau0 * t) * u[k];
        series.values.push_back(u[k].real());
    }
    const Field spectral_side =
        spectral::apply_multiplier(conj, [&](std::span<const double> f) { return frac::caputo_symbol(alpha, tau0, f[0]); });
    const auto d = frac::caputo_l1(series, alpha);
    Field expected(g);
    for (std::size_t k = 0; k < N; ++k) expected[k] = std::exp(tau0 * dt * static_cast<double>(k)) * d.values[k];
    CHECK(relative_l2_error(spectral_side, expected) <= 1e-2);
}
