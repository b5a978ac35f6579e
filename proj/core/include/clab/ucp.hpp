#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clab/field.hpp"
#include "clab/forward_solver.hpp"
#include "clab/params.hpp"

namespace clab::ucp {

struct UcpOptions {
    /// Allowed fraction of commutator mass outside {X/2 < x_n <= X}.
    double leak_tol = 1e-10;
    /// Pass if the fitted exponent is <= -decay_margin * 5X^2/16.
    double decay_margin = 0.8;
};

/// Both sides of the decay inequality per beta. With K the largest measured Carleman
/// ratio of chi u and Q(beta) the weighted commutator-zone integral,
///   weighted_left = K Q(beta)          (Carleman bound for beta^3 e^{9 beta X^2/16} int_{x_n<=X/4} |u|^2)
///   interior_mass = weighted_left / (beta^3 e^{9 beta X^2/16})
///   bound         = C(u) e^{beta X^2/4},  C(u) = K max_beta Q(beta) e^{-beta X^2/4}
/// The fitted exponent is the slope of log(beta^3 interior_mass) against beta.
struct UcpReport {
    std::vector<double> beta;
    std::vector<double> interior_mass;
    std::vector<double> bound;
    std::vector<double> weighted_left;
    std::vector<double> ratio;
    std::vector<double> commutator_zone;
    std::vector<double> carleman_ratio;
    double carleman_constant = 0.0;
    double c_u = 0.0;
    double fitted_exponent = 0.0;
    double target_exponent = 0.0;
    double commutator_leak = 0.0;
    /// Plain int_{x_n <= X/4} |u|^2 of the localized field (independent of beta).
    double measured_interior = 0.0;
    double leak_tol = 0.0;
    double decay_margin = 0.0;
    bool localized = false;
    bool decay_ok = false;
    bool pass = false;

    /// Columns (beta, interior_mass, bound, ratio).
    [[nodiscard]] std::string to_csv(const std::vector<std::string>& comments = {}) const;
    [[nodiscard]] std::string summary_json() const;
};

/// x grid for the localized field: same spacings as y_grid, power-of-two counts, a
/// time window four times the horizon, and nodes aligned with the y lattice.
GridSpec default_x_grid(const ProblemParams& params, const GridSpec& y_grid);

/// Runs the localization, cutoff, commutator and Carleman pipeline on u(t, y).
/// u must vanish for t <= 0, y_n <= 0 and t >= T (SupportViolation otherwise).
UcpReport ucp_experiment(const ProblemParams& params, const Field& u, std::span<const double> betas,
                         const UcpOptions& options = {}, std::optional<GridSpec> x_grid = std::nullopt);

struct DemoSpec {
    double dt = 1.0 / 64.0;
    std::size_t cells = 1280;
    /// Spatial bump in y_n: center and half-width.
    double center = 0.25;
    double width = 0.2;
};

struct DemoResult {
    Field u;
    UcpReport report;
    /// max |u - target| / max |target| of the forward solve.
    double forward_error = 0.0;
};

/// Manufactured target phi(t) B(y), forcing chosen so the discrete scheme reproduces
/// it, forward solve, then ucp_experiment on the computed solution.
DemoResult ucp_demo(const ProblemParams& params, std::span<const double> betas, const DemoSpec& spec = {},
                    const UcpOptions& options = {});

}  // namespace clab::ucp
