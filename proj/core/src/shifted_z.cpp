#include "clab/shifted_z.hpp"

#include <cmath>

#include "clab/errors.hpp"
#include "clab/frac_ops.hpp"
#include "clab/spectral.hpp"

namespace clab::spectral {

namespace {

// |a| - |b|
double abs_diff(double a, double b) {
    const double s = std::abs(a) + std::abs(b);
    return s > 0.0 ? (a - b) * (a + b) / s : 0.0;
}

// h(a) - h(b) with h(x) = (1+x^2)^{1/4}; (p - q) = (p^4 - q^4) / ((p+q)(p^2+q^2)).
double h_diff(double a, double b) {
    const double p = frac::h_multiplier(a);
    const double q = frac::h_multiplier(b);
    return (a - b) * (a + b) / ((p + q) * (p * p + q * q));
}

// sum_{i<j} x^{j-1-i} x0^i, so that x^j - x0^j = (x - x0) * telescope(x, x0, j).
double telescope(double x, double x0, int j) {
    double acc = 0.0;
    for (int i = 0; i < j; ++i) acc += std::pow(x, j - 1 - i) * std::pow(x0, i);
    return acc;
}

}  // namespace

double shifted_raw_error_symbol(double beta, int j, int k, double sigma) {
    const double hx = frac::h_multiplier(sigma + beta);
    const double h0 = frac::h_multiplier(beta);
    const double dh = h_diff(sigma + beta, beta);
    return dh * telescope(hx, h0, j) * std::pow(sigma + beta, k) +
           std::pow(h0, j) * sigma * telescope(sigma + beta, beta, k);
}

cplx shifted_symbol(ShiftMode mode, double beta, int j, int k, double sigma) {
    if (j < 0 || k < 0) throw DomainError("shifted operator powers must be nonnegative");
    switch (mode) {
        case ShiftMode::Raw:
            return std::pow(frac::h_multiplier(sigma + beta), j) * std::pow(sigma + beta, k);
        case ShiftMode::Gj:
            return std::pow(abs_diff(sigma + beta, beta), j);
        case ShiftMode::Hjk:
            return std::pow(h_diff(sigma + beta, beta), j) * std::pow(sigma, k);
    }
    return {0.0, 0.0};
}

Field apply_shifted_z_operator(const Field& g, double beta, int j, int k, ShiftMode mode) {
    if (g.grid().rank() != 1) throw DomainError("shifted z operator expects a one-axis field");
    return apply_multiplier(g, [=](std::span<const double> s) { return shifted_symbol(mode, beta, j, k, s[0]); });
}

}  // namespace clab::spectral
