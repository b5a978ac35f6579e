#include "clab/carleman.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "clab/errors.hpp"
#include "clab/frac_ops.hpp"
#include "clab/shifted_z.hpp"
#include "clab/spectral.hpp"
#include "json.hpp"

namespace clab::carleman {

namespace {

constexpr double kExpLimit = 700.0;

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::size_t xn_axis(const GridSpec& g) {
    const auto sp = g.space_axes();
    if (sp.empty()) throw DomainError("grid has no space axis");
    return sp.back();
}

double max_psi(const ProblemParams& params, const GridSpec& g) {
    const auto& ax = g.axis(xn_axis(g));
    return std::max(params.psi(ax.coord(0)), params.psi(ax.coord(ax.count - 1)));
}

// Multiplies u pointwise by e^{c psi(x_n)}.
Field times_exp_psi(const ProblemParams& params, const Field& u, double c) {
    const std::size_t a = xn_axis(u.grid());
    const auto& ax = u.grid().axis(a);
    std::vector<double> w(ax.count);
    for (std::size_t i = 0; i < ax.count; ++i) w[i] = std::exp(c * params.psi(ax.coord(i)));
    Field out = u;
    for_each_index(u.grid(), [&](std::size_t flat, std::span<const std::size_t> idx) { out[flat] *= w[idx[a]]; });
    return out;
}

// Spatial support of u: true at every space index where u is nonzero for some t (or z).
std::vector<char> space_support(const Field& u) {
    const auto& g = u.grid();
    const auto sp = g.space_axes();
    std::size_t count = 1;
    for (auto a : sp) count *= g.axis(a).count;
    std::vector<char> mask(count, 0);
    for_each_index(g, [&](std::size_t flat, std::span<const std::size_t> idx) {
        if (u[flat] == cplx(0.0, 0.0)) return;
        std::size_t s = 0;
        for (auto a : sp) s = s * g.axis(a).count + idx[a];
        mask[s] = 1;
    });
    return mask;
}

// int e^{2 beta psi} |u|^2 over the spatial set `mask` (all points if empty).
double weighted(const ProblemParams& params, const Field& u, double beta, const std::vector<char>& mask = {}) {
    const auto& g = u.grid();
    const auto sp = g.space_axes();
    const std::size_t an = sp.back();
    const auto& ax = g.axis(an);
    std::vector<double> w(ax.count);
    for (std::size_t i = 0; i < ax.count; ++i) w[i] = std::exp(2.0 * beta * params.psi(ax.coord(i)));
    double acc = 0.0;
    for_each_index(g, [&](std::size_t flat, std::span<const std::size_t> idx) {
        if (!mask.empty()) {
            std::size_t s = 0;
            for (auto a : sp) s = s * g.axis(a).count + idx[a];
            if (!mask[s]) return;
        }
        acc += w[idx[an]] * std::norm(u[flat]);
    });
    return acc * g.cell_volume();
}

void guard(double exponent) {
    if (exponent > kExpLimit) {
        throw OverflowGuard("exponential weight exponent " + num(exponent) + " exceeds " + num(kExpLimit));
    }
}

RatioEntry make_entry(double lhs, double rhs, double scale) {
    if (!(rhs > 1e-28 * scale) || rhs == 0.0) {
        throw ZeroDenominator("right-hand side " + num(rhs) + " is negligible");
    }
    return {lhs, rhs, lhs / rhs};
}

}  // namespace

void RatioSweep::add(double p, const RatioEntry& e) {
    param.push_back(p);
    lhs.push_back(e.lhs);
    rhs.push_back(e.rhs);
    ratio.push_back(e.ratio);
    sup_ratio = ratio.size() == 1 ? e.ratio : std::max(sup_ratio, e.ratio);
}

std::string RatioSweep::to_csv(const std::vector<std::string>& comments) const {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << '\n';
    os << param_name << ",lhs,rhs,ratio\n";
    for (std::size_t i = 0; i < param.size(); ++i) {
        os << num(param[i]) << ',' << num(lhs[i]) << ',' << num(rhs[i]) << ',' << num(ratio[i]) << '\n';
    }
    return os.str();
}

std::string RatioSweep::summary_json() const {
    nlohmann::json j;
    j["param_name"] = param_name;
    j["count"] = param.size();
    j["sup_ratio"] = sup_ratio;
    return j.dump(2);
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs at least two matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw DomainError("slope fit with identical abscissae");
    return (n * sxy - sx * sy) / den;
}

RatioEntry subelliptic_ratio(const Field& u, const ProblemParams& params) {
    const auto& g = u.grid();
    const auto za = g.z_axis();
    if (!za || !g.time_axis()) throw DomainError("subelliptic_ratio expects a (t, x, z) grid");
    const std::size_t z = *za;
    const auto sp = g.space_axes();
    const double alpha = params.alpha;

    auto lambda1 = [&](std::span<const double> k) {
        std::vector<double> xi;
        for (auto a : sp) xi.push_back(k[a]);
        return frac::lambda_alpha(alpha, 1.0, k[0], xi);
    };
    double lhs = 0.0;
    lhs += std::sqrt(spectral::fourier_weighted_mass(
        u, [&](std::span<const double> k) { return cplx(std::pow(frac::h_multiplier(k[z]), 2)); }));
    lhs += std::sqrt(spectral::fourier_weighted_mass(
        u, [&](std::span<const double> k) { return cplx(frac::h_multiplier(k[z]) * k[z]); }));
    lhs += std::sqrt(spectral::fourier_weighted_mass(
        u, [&](std::span<const double> k) { return frac::h_multiplier(k[z]) * lambda1(k); }));

    const double rhs = spectral::apply_P_psi(params, u).l2_norm();
    const double un = u.l2_norm();
    if (!(rhs > 1e-14 * un) || un == 0.0) throw ZeroDenominator("||P_psi u|| is negligible relative to ||u||");
    return {lhs, rhs, lhs / rhs};
}

double conjugation_residual(const ProblemParams& params, const Field& w, double beta) {
    const double b = std::abs(beta);
    guard(b * max_psi(params, w.grid()));
    const Field shifted = spectral::apply_P_shifted(params, w, b, spectral::Ordering::Substitution);
    const Field conj = times_exp_psi(params, spectral::apply_P(params, times_exp_psi(params, w, -b)), b);
    const double den = shifted.l2_norm();
    if (den == 0.0) throw ZeroDenominator("shifted operator output vanishes");
    return (shifted - conj).l2_norm() / den;
}

RatioEntry carleman_ratio(const Field& v, double beta, const ProblemParams& params) {
    guard(2.0 * beta * max_psi(params, v.grid()));
    const auto sp = v.grid().space_axes();
    // D_x and P are local in x, so every integrand vanishes off the spatial support of v.
    // Integrating there keeps spectral round-off far from the support from being
    // amplified by the weight.
    const auto mask = space_support(v);
    const double m0 = weighted(params, v, beta, mask);
    double m1 = 0.0;
    for (auto a : sp) m1 += weighted(params, spectral::derivative(v, a), beta, mask);
    const double lhs = beta * beta * beta * m0 + beta * m1;
    const double rhs = weighted(params, spectral::apply_P(params, v), beta, mask);
    return make_entry(lhs, rhs, m0);
}

RatioEntry carleman_ratio_substituted(const Field& f, double beta, const ProblemParams& params) {
    const auto& g = f.grid();
    const auto sp = g.space_axes();
    const std::size_t an = sp.back();
    const double m0 = f.l2_norm_sq();
    double m1 = 0.0;
    for (auto a : sp) {
        Field d = spectral::derivative(f, a);
        if (a == an) {
            const auto& ax = g.axis(an);
            for_each_index(g, [&](std::size_t flat, std::span<const std::size_t> idx) {
                d[flat] += cplx(0.0, beta * (ax.coord(idx[an]) - params.X)) * f[flat];
            });
        }
        m1 += d.l2_norm_sq();
    }
    const double lhs = beta * beta * beta * m0 + beta * m1;
    const double rhs = spectral::apply_P_shifted(params, f, beta, spectral::Ordering::Substitution).l2_norm_sq();
    return make_entry(lhs, rhs, m0);
}

RatioEntry chain_ratio(const ProblemParams& params, const Field& f, const Field& g, double beta) {
    if (g.grid().rank() != 1) throw DomainError("chain_ratio expects g on a single z axis");
    auto axes = f.grid().axes();
    Axis za = g.grid().axis(0);
    za.role = AxisRole::Z;
    axes.push_back(za);
    const GridSpec grid(axes);
    Field u(grid);
    const std::size_t nz = za.count;
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t m = 0; m < nz; ++m) u[i * nz + m] = f[i] * g[m];
    }
    const double gn = g.l2_norm_sq();
    double m1 = 0.0;
    for (auto a : f.grid().space_axes()) m1 += spectral::derivative(f, a).l2_norm_sq();
    const double lhs = gn * (beta * beta * beta * f.l2_norm_sq() + beta * m1);
    const double rhs = spectral::apply_P_psi(params, u, beta).l2_norm_sq();
    return make_entry(lhs, rhs, gn * f.l2_norm_sq());
}

std::string ShiftedBoundSweep::to_csv(const std::vector<std::string>& comments) const {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << '\n';
    os << "beta,j,k,error_ratio,lower_ratio\n";
    for (const auto& r : rows) {
        os << num(r.beta) << ',' << r.j << ',' << r.k << ',' << num(r.error_ratio) << ',' << num(r.lower_ratio) << '\n';
    }
    return os.str();
}

ShiftedBoundSweep shifted_bound_check(const Field& g, std::span<const double> betas) {
    if (g.grid().rank() != 1) throw DomainError("shifted_bound_check expects a one-axis field");
    const double gn = g.l2_norm();
    if (gn == 0.0) throw ZeroDenominator("g vanishes");
    ShiftedBoundSweep out;
    out.min_lower_ratio = std::numeric_limits<double>::infinity();
    out.worst_error_slope = -std::numeric_limits<double>::infinity();
    for (const auto& pair : kShiftedPairs) {
        const int j = pair[0];
        const int k = pair[1];
        std::vector<double> lb, le;
        for (double beta : betas) {
            const double scale = std::pow(frac::h_multiplier(beta), j) * std::pow(beta, k);
            const Field err = spectral::apply_multiplier(g, [=](std::span<const double> s) {
                return cplx(spectral::shifted_raw_error_symbol(beta, j, k, s[0]));
            });
            const Field raw = spectral::apply_shifted_z_operator(g, beta, j, k, spectral::ShiftMode::Raw);
            ShiftedBoundRow row{beta, j, k, err.l2_norm() / (scale * gn), raw.l2_norm() / (scale * gn)};
            out.min_lower_ratio = std::min(out.min_lower_ratio, row.lower_ratio);
            lb.push_back(std::log(beta));
            le.push_back(std::log(row.error_ratio));
            out.rows.push_back(row);
        }
        if (lb.size() >= 2) {
            const double s = fit_slope(lb, le);
            out.error_slopes.push_back(s);
            out.worst_error_slope = std::max(out.worst_error_slope, s);
        }
    }
    return out;
}

}  // namespace clab::carleman
