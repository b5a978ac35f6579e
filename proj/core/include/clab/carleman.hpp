#pragma once

#include <span>
#include <string>
#include <vector>

#include "clab/field.hpp"
#include "clab/params.hpp"

namespace clab::carleman {

struct RatioEntry {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

/// Records lhs/rhs over a parameter list; sup_ratio tracks the maximum.
struct RatioSweep {
    std::string param_name = "param";
    std::vector<double> param;
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::vector<double> ratio;
    double sup_ratio = 0.0;

    void add(double p, const RatioEntry& e);
    /// Columns (param, lhs, rhs, ratio); optional leading comment lines.
    [[nodiscard]] std::string to_csv(const std::vector<std::string>& comments = {}) const;
    [[nodiscard]] std::string summary_json() const;
};

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

/// lhs = sum over (k,s) in {(0,0),(1,0),(0,1)} of ||h(D_z)^{2-k-s} Lambda_alpha^s D_z^k u||,
/// rhs = ||P_psi u|| on a (t, x, z) grid. Throws ZeroDenominator if rhs < 1e-14 ||u||.
RatioEntry subelliptic_ratio(const Field& u, const ProblemParams& params);

/// ||A w - e^{beta psi} P(e^{-beta psi} w)|| / ||A w|| with A = p(x, D + i beta grad psi)
/// in substitution ordering. Throws OverflowGuard if beta * max psi > 700.
double conjugation_residual(const ProblemParams& params, const Field& w, double beta);

/// lhs = beta^3 int e^{2 beta psi}|v|^2 + beta sum_j int e^{2 beta psi}|D_j v|^2,
/// rhs = int e^{2 beta psi}|P v|^2. Throws OverflowGuard if 2 beta max psi > 700 and
/// ZeroDenominator if rhs is negligible.
RatioEntry carleman_ratio(const Field& v, double beta, const ProblemParams& params);

/// Same quantity written in terms of f = e^{beta psi} v:
/// lhs = sum_{|gamma|<=1} beta^{3-2|gamma|} ||(D + i beta grad psi)^gamma f||^2,
/// rhs = ||p(x, D + i beta grad psi) f||^2.
RatioEntry carleman_ratio_substituted(const Field& f, double beta, const ProblemParams& params);

/// For u = e^{i beta z} f(t,x) g(z): lhs = ||g||^2 sum_{|gamma|<=1} beta^{3-2|gamma|} ||D^gamma f||^2,
/// rhs = ||P_psi u||^2.
RatioEntry chain_ratio(const ProblemParams& params, const Field& f, const Field& g, double beta);

struct ShiftedBoundRow {
    double beta = 0.0;
    int j = 0;
    int k = 0;
    /// ||e^{-i beta z} h^j D^k (e^{i beta z} g) - h(beta)^j beta^k g|| / (h(beta)^j beta^k ||g||)
    double error_ratio = 0.0;
    /// ||h^j D^k (e^{i beta z} g)|| / (h(beta)^j beta^k ||g||)
    double lower_ratio = 0.0;
};

struct ShiftedBoundSweep {
    std::vector<ShiftedBoundRow> rows;
    /// Per (j,k): least-squares slope of log error_ratio against log beta.
    std::vector<double> error_slopes;
    double worst_error_slope = 0.0;
    double min_lower_ratio = 0.0;

    [[nodiscard]] std::string to_csv(const std::vector<std::string>& comments = {}) const;
};

/// Index pairs (j,k) checked by shifted_bound_check.
inline constexpr int kShiftedPairs[4][2] = {{2, 0}, {1, 0}, {1, 1}, {0, 1}};

ShiftedBoundSweep shifted_bound_check(const Field& g, std::span<const double> betas);

}  // namespace clab::carleman
