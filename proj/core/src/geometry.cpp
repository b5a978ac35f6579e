#include "clab/geometry.hpp"

#include <array>
#include <cmath>
#include <string>

#include "clab/errors.hpp"

namespace clab::geometry {

double smooth_step(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

double evaluate_cutoff(const CutoffSpec& spec, double coordinate) {
    const double s = (coordinate - spec.lo) / (spec.hi - spec.lo);
    const double up = smooth_step(s);
    return spec.kind == CutoffKind::Kappa ? up : 1.0 - up;
}

MappedPoint holmgren_map(const ProblemParams& params, std::span<const double> prime, double last, double t,
                         Direction direction, std::span<const double> y_hat) {
    if (!y_hat.empty() && y_hat.size() != prime.size()) throw DomainError("y_hat has the wrong dimension");
    MappedPoint out;
    out.prime.resize(prime.size());
    out.t = t;
    const double shear = params.X / params.T * (t - params.T);
    double r2 = 0.0;
    for (std::size_t j = 0; j < prime.size(); ++j) {
        const double c = y_hat.empty() ? 0.0 : y_hat[j];
        if (direction == Direction::Forward) {
            out.prime[j] = prime[j] - c;
            r2 += out.prime[j] * out.prime[j];
        } else {
            out.prime[j] = prime[j] + c;
            r2 += prime[j] * prime[j];
        }
    }
    out.last = direction == Direction::Forward ? last + r2 + shear : last - r2 - shear;
    return out;
}

namespace {

// Cubic Lagrange weights for nodes -1, 0, 1, 2 at offset s in [0, 1).
std::array<double, 4> lagrange4(double s) {
    return {-s * (s - 1.0) * (s - 2.0) / 6.0, (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
            -(s + 1.0) * s * (s - 2.0) / 2.0, (s + 1.0) * s * (s - 1.0) / 6.0};
}

}  // namespace

cplx interpolate_cubic(const Field& u, std::span<const double> point) {
    const auto& g = u.grid();
    const std::size_t rank = g.rank();
    if (point.size() != rank) throw DomainError("interpolation point has the wrong rank");
    std::vector<long> base(rank);
    std::vector<std::array<double, 4>> w(rank);
    for (std::size_t a = 0; a < rank; ++a) {
        const auto& ax = g.axis(a);
        double q = (point[a] - ax.origin) / ax.spacing;
        const double r = std::round(q);
        if (std::abs(q - r) < 1e-9) q = r;  // land exactly on nodes for aligned grids
        const double f = std::floor(q);
        base[a] = static_cast<long>(f);
        w[a] = lagrange4(q - f);
        if (base[a] + 2 < 0 || base[a] - 1 >= static_cast<long>(ax.count)) return {0.0, 0.0};
    }
    cplx acc{0.0, 0.0};
    const std::size_t terms = std::size_t{1} << (2 * rank);
    for (std::size_t code = 0; code < terms; ++code) {
        double weight = 1.0;
        std::size_t flat = 0;
        bool inside = true;
        for (std::size_t a = 0; a < rank && inside; ++a) {
            const std::size_t o = (code >> (2 * a)) & 3U;
            const long idx = base[a] - 1 + static_cast<long>(o);
            if (idx < 0 || idx >= static_cast<long>(g.axis(a).count)) {
                inside = false;
                break;
            }
            weight *= w[a][o];
            flat += static_cast<std::size_t>(idx) * g.stride(a);
        }
        if (inside && weight != 0.0) acc += weight * u[flat];
    }
    return acc;
}

Field prepare_localized_field(const ProblemParams& params, const Field& u, const GridSpec& x_grid, double tol) {
    const auto& yg = u.grid();
    if (u.side() != Side::Physical) throw DomainError("prepare_localized_field expects a physical field");
    if (!yg.time_axis() || !x_grid.time_axis()) throw DomainError("both grids need a leading time axis");
    const auto n = static_cast<std::size_t>(params.n);
    if (yg.rank() != n + 1 || x_grid.rank() != n + 1) throw DomainError("grids must be (t, y_1..y_n)");

    const double amp = u.max_abs();
    const double limit = tol * amp;
    const auto theta = CutoffSpec::theta(params);
    const auto kappa = CutoffSpec::kappa(params);

    Field w(yg);
    for_each_index(yg, [&](std::size_t flat, std::span<const std::size_t> idx) {
        const double t = yg.axis(0).coord(idx[0]);
        const double yn = yg.axis(n).coord(idx[n]);
        const bool must_vanish = t <= 0.0 || yn <= 0.0 || t >= params.T;
        if (must_vanish) {
            if (std::abs(u[flat]) > limit && amp > 0.0) {
                throw SupportViolation("input is nonzero at t=" + std::to_string(t) + ", y_n=" + std::to_string(yn));
            }
            return;
        }
        w[flat] = evaluate_cutoff(theta, t) * evaluate_cutoff(kappa, yn) * u[flat];
    });
    if (amp == 0.0) return Field(x_grid);

    Field out(x_grid);
    std::vector<double> pt(n + 1);
    std::vector<double> xp(n - 1);
    for_each_index(x_grid, [&](std::size_t flat, std::span<const std::size_t> idx) {
        const double t = x_grid.axis(0).coord(idx[0]);
        if (t <= 0.0 || t >= params.T) return;
        for (std::size_t j = 0; j + 1 < n; ++j) xp[j] = x_grid.axis(1 + j).coord(idx[1 + j]);
        const double xn = x_grid.axis(n).coord(idx[n]);
        const auto y = holmgren_map(params, xp, xn, t, Direction::Inverse);
        if (y.last <= 0.0) return;
        pt[0] = t;
        for (std::size_t j = 0; j + 1 < n; ++j) pt[1 + j] = y.prime[j];
        pt[n] = y.last;
        out[flat] = std::exp(params.tau0 * t) * interpolate_cubic(w, pt);
    });
    return out;
}

}  // namespace clab::geometry
