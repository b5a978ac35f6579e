#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace clab {

/// Scalars of the model problem: fractional order, time-conjugation rate,
/// Holmgren shift, horizon, dimension, box half-width and time-cutoff margin.
struct ProblemParams {
    double alpha = 0.5;
    double tau0 = -1.0;
    double X = 0.1;
    double T = 1.0;
    int n = 2;
    double l = 0.5;
    double eps = 0.2;

    /// Throws DomainError naming the offending field.
    void validate() const;

    /// psi(x) = (x_n - X)^2 / 2, the Carleman weight exponent.
    [[nodiscard]] double psi(double x_n) const noexcept {
        const double d = x_n - X;
        return 0.5 * d * d;
    }
};

/// A point (x; tau, xi, sigma) of extended phase space. x' is the first n-1
/// entries of x and x_n the last one; likewise for xi.
struct PhasePoint {
    std::vector<double> x;
    double tau = 0.0;
    std::vector<double> xi;
    double sigma = 0.0;

    [[nodiscard]] std::size_t dim() const noexcept { return x.size(); }
    [[nodiscard]] double x_n() const { return x.back(); }
    [[nodiscard]] double xi_n() const { return xi.back(); }
    [[nodiscard]] std::span<const double> x_prime() const { return {x.data(), x.size() - 1}; }
    [[nodiscard]] std::span<const double> xi_prime() const { return {xi.data(), xi.size() - 1}; }

    static PhasePoint zero(int n);
};

}  // namespace clab
