#include "clab/ucp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "clab/carleman.hpp"
#include "clab/errors.hpp"
#include "clab/geometry.hpp"
#include "clab/spectral.hpp"
#include "clab/test_fields.hpp"
#include "json.hpp"

namespace clab::ucp {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// Axis with spacing h and at least `span` length plus padding, centred on [lo, hi]
// and with nodes on the lattice anchor + m h.
Axis aligned_axis(double lo, double hi, double h, double anchor) {
    const auto need = static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 16;
    const std::size_t count = next_pow2(need);
    const double slack = static_cast<double>(count) * h - (hi - lo);
    const double m = std::floor((lo - 0.5 * slack - anchor) / h + 1e-9);
    return Axis::space(count, h, anchor + m * h);
}

// Weighted sum over the x_n axis restricted by a predicate.
template <class Pred, class W>
double zone_sum(const Field& u, std::size_t an, Pred&& inside, W&& weight) {
    const auto& ax = u.grid().axis(an);
    double acc = 0.0;
    for_each_index(u.grid(), [&](std::size_t flat, std::span<const std::size_t> idx) {
        const double xn = ax.coord(idx[an]);
        if (inside(xn)) acc += weight(xn) * std::norm(u[flat]);
    });
    return acc * u.grid().cell_volume();
}

}  // namespace

std::string UcpReport::to_csv(const std::vector<std::string>& comments) const {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << '\n';
    os << "beta,interior_mass,bound,ratio\n";
    for (std::size_t i = 0; i < beta.size(); ++i) {
        os << num(beta[i]) << ',' << num(interior_mass[i]) << ',' << num(bound[i]) << ',' << num(ratio[i]) << '\n';
    }
    return os.str();
}

std::string UcpReport::summary_json() const {
    nlohmann::json j;
    auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    j["fitted_exponent"] = finite_or_null(fitted_exponent);
    j["target_exponent"] = target_exponent;
    j["decay_margin"] = decay_margin;
    j["carleman_constant"] = carleman_constant;
    j["C_u"] = c_u;
    j["commutator_leak"] = commutator_leak;
    j["leak_tol"] = leak_tol;
    j["measured_interior"] = measured_interior;
    j["localized"] = localized;
    j["decay_ok"] = decay_ok;
    j["pass"] = pass;
    j["note"] =
        "interior_mass is the Carleman bound implied by the commutator-zone integral; "
        "the decay fit is a numerical surrogate for vanishing across y_n = 0, not a proof";
    return j.dump(2);
}

GridSpec default_x_grid(const ProblemParams& params, const GridSpec& y_grid) {
    const auto n = static_cast<std::size_t>(params.n);
    if (!y_grid.time_axis() || y_grid.rank() != n + 1) throw DomainError("y grid must be (t, y_1..y_n)");
    const auto& ta = y_grid.axis(0);
    const auto steps = static_cast<std::size_t>(std::llround(params.T / ta.spacing));
    std::vector<Axis> axes{Axis::time(next_pow2(4 * steps), ta.spacing)};
    double r2max = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto& ya = y_grid.axis(1 + j);
        const double lo = ya.origin;
        const double hi = ya.coord(ya.count - 1);
        r2max += std::max(lo * lo, hi * hi);
        axes.push_back(aligned_axis(lo, hi, ya.spacing, ya.origin));
    }
    const auto& yn = y_grid.axis(n);
    const double top = yn.coord(yn.count - 1) + r2max;
    axes.push_back(aligned_axis(-params.X - yn.spacing, top + yn.spacing, yn.spacing, yn.origin));
    return GridSpec(axes);
}

UcpReport ucp_experiment(const ProblemParams& params, const Field& u, std::span<const double> betas,
                         const UcpOptions& options, std::optional<GridSpec> x_grid) {
    params.validate();
    if (betas.size() < 2) throw DomainError("ucp_experiment needs at least two beta values");
    const GridSpec xg = x_grid ? *x_grid : default_x_grid(params, u.grid());
    const Field v = geometry::prepare_localized_field(params, u, xg);
    const std::size_t an = xg.rank() - 1;
    const auto& axn = xg.axis(an);
    const double X = params.X;

    const auto chi_spec = geometry::CutoffSpec::chi(params);
    std::vector<double> chi(axn.count);
    for (std::size_t i = 0; i < axn.count; ++i) chi[i] = geometry::evaluate_cutoff(chi_spec, axn.coord(i));
    auto times_chi = [&](Field f) {
        for_each_index(xg, [&](std::size_t flat, std::span<const std::size_t> idx) { f[flat] *= chi[idx[an]]; });
        return f;
    };
    const Field cv = times_chi(v);
    const Field comm = spectral::apply_P(params, cv) - times_chi(spectral::apply_P(params, v));

    UcpReport rep;
    rep.leak_tol = options.leak_tol;
    rep.decay_margin = options.decay_margin;
    rep.target_exponent = 5.0 * X * X / 16.0;
    auto in_zone = [X](double xn) { return xn > 0.5 * X && xn <= X; };
    const double total = zone_sum(comm, an, [](double) { return true; }, [](double) { return 1.0; });
    const double outside = zone_sum(comm, an, [&](double xn) { return !in_zone(xn); }, [](double) { return 1.0; });
    rep.commutator_leak = total > 0.0 ? outside / total : 0.0;
    rep.localized = rep.commutator_leak <= options.leak_tol;
    rep.measured_interior = zone_sum(v, an, [X](double xn) { return xn <= 0.25 * X; }, [](double) { return 1.0; });

    const bool trivial = cv.max_abs() == 0.0;
    for (double beta : betas) {
        if (2.0 * beta * std::max(params.psi(axn.coord(0)), params.psi(axn.coord(axn.count - 1))) > 700.0) {
            throw OverflowGuard("e^{2 beta psi} out of range at beta = " + num(beta));
        }
        rep.beta.push_back(beta);
        rep.commutator_zone.push_back(
            zone_sum(comm, an, in_zone, [&](double xn) { return std::exp(2.0 * beta * params.psi(xn)); }));
        rep.carleman_ratio.push_back(trivial ? 0.0 : carleman::carleman_ratio(cv, beta, params).ratio);
    }
    rep.carleman_constant = *std::max_element(rep.carleman_ratio.begin(), rep.carleman_ratio.end());
    double cmax = 0.0;
    for (std::size_t i = 0; i < rep.beta.size(); ++i) {
        cmax = std::max(cmax, rep.commutator_zone[i] * std::exp(-rep.beta[i] * X * X / 4.0));
    }
    rep.c_u = rep.carleman_constant * cmax;

    std::vector<double> fb, fy;
    for (std::size_t i = 0; i < rep.beta.size(); ++i) {
        const double b = rep.beta[i];
        const double left = rep.carleman_constant * rep.commutator_zone[i];
        const double bound = rep.c_u * std::exp(b * X * X / 4.0);
        rep.weighted_left.push_back(left);
        rep.interior_mass.push_back(left / (b * b * b * std::exp(9.0 * b * X * X / 16.0)));
        rep.bound.push_back(bound);
        rep.ratio.push_back(bound > 0.0 ? left / bound : 0.0);
        if (left > 0.0) {
            fb.push_back(b);
            fy.push_back(std::log(b * b * b * rep.interior_mass.back()));
        }
    }
    if (fb.size() >= 2) {
        rep.fitted_exponent = carleman::fit_slope(fb, fy);
    } else {
        rep.fitted_exponent = -std::numeric_limits<double>::infinity();
    }
    rep.decay_ok = rep.fitted_exponent <= -options.decay_margin * rep.target_exponent;
    rep.pass = rep.localized && rep.decay_ok;
    return rep;
}

DemoResult ucp_demo(const ProblemParams& params, std::span<const double> betas, const DemoSpec& spec,
                    const UcpOptions& options) {
    params.validate();
    ForwardProblem fp;
    fp.params = params;
    fp.cells = spec.cells;
    const GridSpec grid = forward_grid(fp, spec.dt);
    const auto n = static_cast<std::size_t>(params.n);
    const double T = params.T;
    const Field target = Field::sample(grid, [&](std::span<const double> c) {
        double v = fields::bump((c[0] - 0.45 * T) / (0.4 * T)) * fields::bump((c[n] - spec.center) / spec.width);
        for (std::size_t j = 1; j < n; ++j) v *= fields::bump(c[j] / (0.5 * params.l));
        return cplx(v);
    });
    fp.forcing = discrete_forcing(fp, spec.dt, target);
    DemoResult out;
    out.u = solve_forward(fp, spec.dt);
    out.forward_error = (out.u - target).max_abs() / target.max_abs();
    out.report = ucp_experiment(params, out.u, betas, options);
    return out;
}

}  // namespace clab::ucp
