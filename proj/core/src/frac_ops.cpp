#include "clab/frac_ops.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "clab/errors.hpp"

namespace clab::frac {

namespace {

constexpr cplx kI{0.0, 1.0};

template <class T>
TimeSeries<T> caputo_l1_impl(const TimeSeries<T>& u, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("caputo_l1: alpha must lie in (0,1), got " + std::to_string(alpha));
    }
    if (u.values.size() < 2) {
        throw DomainError("caputo_l1: need at least two samples");
    }
    if (!(u.dt > 0.0)) {
        throw DomainError("caputo_l1: dt must be positive");
    }
    const std::size_t count = u.values.size();
    const auto b = l1_weights(alpha, count);
    const double scale = std::pow(u.dt, -alpha) / std::tgamma(2.0 - alpha);

    std::vector<T> increments(count, T{});
    for (std::size_t i = 1; i < count; ++i) increments[i] = u.values[i] - u.values[i - 1];

    TimeSeries<T> out;
    out.dt = u.dt;
    out.values.assign(count, T{});
    for (std::size_t k = 1; k < count; ++k) {
        T acc{};
        for (std::size_t j = 0; j < k; ++j) acc += b[j] * increments[k - j];
        out.values[k] = scale * acc;
    }
    return out;
}

}  // namespace

cplx complex_power(cplx z, double a) {
    if (z == cplx{0.0, 0.0}) {
        throw DomainError("complex_power: base is zero");
    }
    // std::arg returns values in [-pi, pi]; -pi only arises for a negative real
    // with a signed-zero imaginary part, which maps onto +pi on the principal branch.
    double arg = std::arg(z);
    if (arg == -std::numbers::pi) arg = std::numbers::pi;
    if (z.imag() == 0.0 && z.real() > 0.0) return {std::pow(z.real(), a), 0.0};
    return std::exp(a * cplx{std::log(std::abs(z)), arg});
}

cplx caputo_symbol(double alpha, double tau0, double tau) {
    return complex_power(cplx{-tau0, tau}, alpha);
}

cplx shear_symbol(double alpha, double tau0, double tau) {
    return complex_power(kI, alpha) * complex_power(cplx{tau, tau0}, alpha - 1.0);
}

cplx principal_caputo_symbol(double alpha, double tau) {
    if (tau == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::abs(tau), alpha);
    const double phase = (tau > 0.0 ? 1.0 : -1.0) * alpha * std::numbers::pi / 2.0;
    return std::polar(mag, phase);
}

cplx lambda_alpha(double alpha, double m, double tau, std::span<const double> xi) {
    double xi2 = 0.0;
    for (double v : xi) xi2 += v * v;
    const cplx base{std::pow(1.0 + xi2, 1.0 / alpha), tau};
    return complex_power(base, m * alpha / 2.0);
}

double h_multiplier(double sigma) { return std::pow(1.0 + sigma * sigma, 0.25); }

std::vector<double> l1_weights(double alpha, std::size_t count) {
    std::vector<double> b(count);
    const double e = 1.0 - alpha;
    for (std::size_t j = 0; j < count; ++j) {
        const double jd = static_cast<double>(j);
        b[j] = std::pow(jd + 1.0, e) - (j == 0 ? 0.0 : std::pow(jd, e));
    }
    return b;
}

TimeSeries<double> caputo_l1(const TimeSeries<double>& u, double alpha) {
    return caputo_l1_impl(u, alpha);
}

TimeSeries<cplx> caputo_l1(const TimeSeries<cplx>& u, double alpha) {
    return caputo_l1_impl(u, alpha);
}

}  // namespace clab::frac
