#pragma once

#include <span>
#include <vector>

#include "clab/field.hpp"
#include "clab/params.hpp"

namespace clab::geometry {

/// C-infinity step: 0 for s <= 0, 1 for s >= 1, e^{-1/s} glue in between.
double smooth_step(double s);

enum class CutoffKind { Theta, Kappa, Chi };

/// Transition interval [lo, hi]. Theta and Chi fall from 1 to 0 across it,
/// Kappa rises from 0 to 1.
struct CutoffSpec {
    CutoffKind kind = CutoffKind::Chi;
    double lo = 0.0;
    double hi = 1.0;

    /// 1 on t <= T - eps, 0 on t >= T - eps/2.
    static CutoffSpec theta(const ProblemParams& p) { return {CutoffKind::Theta, p.T - p.eps, p.T - 0.5 * p.eps}; }
    /// 0 on y_n <= -2l/3, 1 on y_n >= -l/3.
    static CutoffSpec kappa(const ProblemParams& p) { return {CutoffKind::Kappa, -2.0 * p.l / 3.0, -p.l / 3.0}; }
    /// 1 on x_n <= X/2, 0 on x_n >= X.
    static CutoffSpec chi(const ProblemParams& p) { return {CutoffKind::Chi, 0.5 * p.X, p.X}; }
};

double evaluate_cutoff(const CutoffSpec& spec, double coordinate);

enum class Direction { Forward, Inverse };

struct MappedPoint {
    std::vector<double> prime;
    double last = 0.0;
    double t = 0.0;
};

/// Forward: x' = y' - y^', x_n = y_n + |y' - y^'|^2 + (X/T)(t - T).
/// Inverse: y' = x' + y^', y_n = x_n - |x'|^2 - (X/T)(t - T).
/// y_hat defaults to the origin when empty.
MappedPoint holmgren_map(const ProblemParams& params, std::span<const double> prime, double last, double t,
                         Direction direction, std::span<const double> y_hat = {});

/// theta(t) kappa(y_n) u, pushed forward to the x grid by the Holmgren map, then
/// multiplied by e^{tau0 t}. Both grids are ordered (t, space...). Resampling is
/// tensor-product cubic Lagrange with zero padding; t <= 0, y_n <= 0 and t >= T
/// are masked to exact zeros. Throws SupportViolation if u exceeds
/// tol * max|u| where those conditions require it to vanish.
Field prepare_localized_field(const ProblemParams& params, const Field& u, const GridSpec& x_grid,
                              double tol = 1e-12);

/// Tensor cubic Lagrange interpolation of a physical field at a point given in
/// axis order. Nodes outside the grid count as zero.
cplx interpolate_cubic(const Field& u, std::span<const double> point);

}  // namespace clab::geometry
