// Runs the ten acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clab/carleman.hpp"
#include "clab/frac_ops.hpp"
#include "clab/geometry.hpp"
#include "clab/partition.hpp"
#include "clab/phase_symbols.hpp"
#include "clab/spectral.hpp"
#include "clab/test_fields.hpp"
#include "clab/ucp.hpp"
#include "oracles.hpp"

using namespace clab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

const double kAlphas[] = {0.25, 0.5, 0.75};

Outcome gradient_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    ProblemParams p;
    p.n = 2;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        auto pt = PhasePoint::zero(p.n);
        pt.x[0] = std::sqrt(p.X / 4.0) * u(rng);
        pt.x[1] = 0.5 * p.X * u(rng);
        for (auto& v : pt.xi) v = 3.0 * u(rng);
        pt.tau = 10.0 * u(rng);
        pt.sigma = 3.0 * u(rng);
        const auto g = symbols::symbol_gradients(p, pt);
        auto fd = [&](bool xi_side, bool real_part) {
            const std::vector<double> base = xi_side ? pt.xi : pt.x;
            return oracle::central_gradient(
                [&](std::span<const double> v) {
                    auto q = pt;
                    (xi_side ? q.xi : q.x).assign(v.begin(), v.end());
                    const auto s = symbols::conjugated_principal_symbol(p, q);
                    return real_part ? s.re : s.im;
                },
                base, 1e-5);
        };
        const std::vector<double>* analytic[4] = {&g.xi_re, &g.x_im, &g.x_re, &g.xi_im};
        const std::vector<double> numeric[4] = {fd(true, true), fd(false, false), fd(false, true), fd(true, false)};
        for (int k = 0; k < 4; ++k) {
            worst = std::max(worst, max_abs_diff(*analytic[k], numeric[k]) / std::max(max_abs(*analytic[k]), 1e-3));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-6 && secs < 5.0, fmt("max rel err %.2e (<= 1e-6), %.2f s (< 5 s)", worst, secs)};
}

Outcome bound_scans() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (double alpha : kAlphas) {
        ProblemParams p;
        p.n = 2;
        p.X = 0.1;
        p.alpha = alpha;
        symbols::SampleSpec spec;
        spec.samples = 10000;
        for (auto k : {symbols::BoundKind::FracReal, symbols::BoundKind::Characteristic, symbols::BoundKind::Bracket,
                       symbols::BoundKind::Elliptic, symbols::BoundKind::Hypoelliptic}) {
            const auto r = symbols::verify_symbol_bounds(k, p, spec);
            ok = ok && r.pass;
            if (!r.pass) detail += fmt("%s@%.2f fails (%.3g) ", std::string(symbols::to_string(k)).c_str(), alpha, r.worst_ratio);
        }
        // large-|tau| tail: the worst FracReal ratio tends to cos(alpha pi / 2)
        auto tail = spec;
        tail.tau_log_lo = 2.0;
        const auto r = symbols::verify_symbol_bounds(symbols::BoundKind::FracReal, p, tail);
        const double c = std::cos(alpha * std::numbers::pi / 2.0);
        const double rel = std::abs(r.worst_ratio - c) / c;
        ok = ok && rel <= 0.05;
        detail += fmt("a=%.2f tail %.4f vs %.4f; ", alpha, r.worst_ratio, c);
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 30.0;
    return {ok, detail + fmt("%.1f s (< 30 s)", secs)};
}

double l1_t2_error(double alpha, std::size_t steps) {
    const double dt = 1.0 / static_cast<double>(steps);
    frac::TimeSeries<double> u;
    u.dt = dt;
    for (std::size_t k = 0; k <= steps; ++k) u.values.push_back(std::pow(dt * static_cast<double>(k), 2));
    const auto d = frac::caputo_l1(u, alpha);
    double err = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = dt * static_cast<double>(k);
        err = std::max(err, std::abs(d.values[k] - 2.0 * std::pow(t, 2.0 - alpha) / std::tgamma(3.0 - alpha)));
    }
    return err;
}

Outcome caputo_convergence() {
    bool ok = true;
    std::string detail;
    for (double alpha : kAlphas) {
        std::vector<double> lx, ly;
        for (std::size_t steps : {64, 128, 256, 512}) {
            lx.push_back(std::log(1.0 / static_cast<double>(steps)));
            ly.push_back(std::log(l1_t2_error(alpha, steps)));
        }
        const double order = carleman::fit_slope(lx, ly);
        ok = ok && std::abs(order - (2.0 - alpha)) <= 0.15;

        frac::TimeSeries<double> lin;
        lin.dt = 1.0 / 64.0;
        for (int k = 0; k <= 64; ++k) lin.values.push_back(lin.dt * k);
        const auto d = frac::caputo_l1(lin, alpha);
        double exact_err = 0.0;
        for (int k = 1; k <= 64; ++k) {
            const double e = std::pow(lin.dt * k, 1.0 - alpha) / std::tgamma(2.0 - alpha);
            exact_err = std::max(exact_err, std::abs(d.values[k] - e) / std::max(1.0, e));
        }
        ok = ok && exact_err <= 1e-12;
        detail += fmt("a=%.2f order %.3f (target %.2f), linear err %.1e; ", alpha, order, 2.0 - alpha, exact_err);
    }
    return {ok, detail};
}

Outcome quantization_consistency() {
    constexpr double pi = std::numbers::pi;
    ProblemParams p;
    p.n = 2;
    // dual path on 256 x 64^2
    const GridSpec g({Axis::time(256, 4.0 / 256), Axis::centered(64, 1.0), Axis::centered(64, 1.0)});
    const Field v = fields::bump_field(g, {{0.5, 0.02, 0.04}, {0.45, 0.45, 0.45}, 1.0});
    const double dual = relative_l2_error(spectral::apply_P(p, v), oracle::dual_path_P(p, v));

    // frozen-coefficient oracle on a windowed plane wave with z dependence e^{sigma z}
    const double L = 16.0, ramp = 2.0, margin = 2.0;
    const GridSpec h({Axis::time(64, L / 64), Axis::centered(16, 1.0), Axis::centered(16, 1.0),
                      Axis{8, 2.0 * pi / 8, 0.0, AxisRole::Z}});
    const double tau = 2.0 * pi * 4.0 / L, xi1 = 4.0 * pi, xi2 = 6.0 * pi, sigma = 2.0;
    auto win = [&](double t) { return geometry::smooth_step(t / ramp) * geometry::smooth_step((L - ramp / 2 - t) / ramp); };
    auto wave = [&](std::span<const double> c) {
        return win(c[0]) * std::exp(cplx(0.0, tau * c[0] + xi1 * c[1] + xi2 * c[2] + sigma * c[3]));
    };
    const Field u = Field::sample(h, wave);
    const Field expected = Field::sample(h, [&](std::span<const double> c) {
        const double x[2] = {c[1], c[2]};
        const cplx zeta[2] = {xi1, cplx(xi2, std::abs(sigma) * (c[2] - p.X))};
        return oracle::complex_total_symbol(p, x, tau, zeta) * wave(c);
    });
    const double frozen = oracle::rel_error_where(spectral::apply_P_psi(p, u), expected, [&](auto idx) {
        const double t = h.axis(0).coord(idx[0]);
        return t >= ramp + margin && t <= L - 1.5 * ramp - margin;
    });
    return {dual <= 1e-2 && frozen <= 5e-2,
            fmt("dual-path rel L2 %.2e (<= 1e-2), frozen oracle %.2e (<= 5e-2)", dual, frozen)};
}

Outcome conjugation_identity() {
    ProblemParams p;
    p.n = 2;
    auto residual = [&](std::size_t nx, double beta) {
        const GridSpec g({Axis::time(64, 4.0 / 64), Axis::centered(nx, 1.0), Axis::centered(nx, 1.0)});
        const Field w = fields::bump_field(g, {{0.5, 0.0, 0.0}, {0.45, 0.3, 0.3}, 1.0});
        return carleman::conjugation_residual(p, w, beta);
    };
    bool ok = true;
    std::string detail;
    for (double beta : {0.0, 5.0, 10.0}) {
        const double coarse = residual(32, beta), fine = residual(64, beta);
        // at beta = 0 both sides are roundoff; below 1e-10 counts as converged
        const bool decreases = fine < coarse || fine <= 1e-10;
        ok = ok && decreases && fine <= 5e-2;
        detail += fmt("b=%g %.2e -> %.2e; ", beta, coarse, fine);
    }
    return {ok, detail};
}

Outcome subelliptic_boundedness() {
    ProblemParams p;
    p.n = 1;
    const auto family = fields::bump_family({{0.0, -0.4, -1.0}, {2.0, 0.4, 1.0}, 0.5, 1.0}, 10, 7);
    auto sup = [&](std::size_t N) {
        const GridSpec g({Axis::time(N, 4.0 / N), Axis::centered(N, 1.0), Axis{N, 4.0 / N, -2.0, AxisRole::Z}});
        double s = 0.0;
        for (const auto& b : family) s = std::max(s, carleman::subelliptic_ratio(fields::bump_field(g, b), p).ratio);
        return s;
    };
    const double a = sup(64), b = sup(128);
    const double change = std::abs(b - a) / a;
    return {std::isfinite(a) && std::isfinite(b) && change <= 0.25,
            fmt("sup ratio %.4f (64^3), %.4f (128^3), change %.1f%% (<= 25%%)", a, b, 100.0 * change)};
}

Outcome carleman_boundedness() {
    ProblemParams p;
    p.n = 2;
    const auto family = fields::bump_family({{0.0, -0.4, -0.55}, {2.0, 0.4, 0.0}, 0.8, 1.0}, 5, 11);
    const GridSpec g({Axis::time(64, 4.0 / 64), Axis::centered(32, 1.0), Axis::space(512, 1.0 / 512, -0.6)});
    const std::vector<double> betas{20.0, 40.0, 80.0, 160.0};
    std::vector<double> lb;
    for (double b : betas) lb.push_back(std::log(b));
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& spec : family) {
        const Field v = fields::bump_field(g, spec);
        std::vector<double> lr;
        for (double b : betas) lr.push_back(std::log(carleman::carleman_ratio(v, b, p).ratio));
        worst = std::max(worst, carleman::fit_slope(lb, lr));
    }
    return {worst <= 0.1, fmt("worst log-log slope %.4f (<= 0.1) over 5 fields", worst)};
}

Outcome shifted_rates() {
    const GridSpec gz({Axis{256, 16.0 / 256, -8.0, AxisRole::Z}});
    const Field g = Field::sample(gz, [](std::span<const double> z) { return cplx(std::exp(-z[0] * z[0]), 0.0); });
    const std::vector<double> betas{1e2, 1e3, 1e4};
    const auto s = carleman::shifted_bound_check(g, betas);
    return {s.worst_error_slope <= -0.4 && s.min_lower_ratio >= 0.5,
            fmt("worst error slope %.3f (<= -0.4), min lower ratio %.4f (>= 0.5)", s.worst_error_slope, s.min_lower_ratio)};
}

Outcome ucp_decay() {
    ProblemParams p;
    p.n = 1;
    p.X = 0.1;
    std::vector<double> betas;
    for (double b = 50.0; b <= 400.0; b += 50.0) betas.push_back(b);
    const auto d = ucp::ucp_demo(p, betas);
    const auto& r = d.report;
    const double need = -0.8 * 5.0 * p.X * p.X / 16.0;
    const bool ok = r.fitted_exponent <= need && r.commutator_leak <= 1e-10;
    return {ok && r.pass, fmt("fitted exponent %.5f (<= %.5f), commutator leak %.1e (<= 1e-10), forward err %.1e",
                              r.fitted_exponent, need, r.commutator_leak, d.forward_error)};
}

Outcome partition_identity() {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> mag(-3.0, 3.0);
    double sum_err = 0.0, hom_err = 0.0;
    for (double alpha : kAlphas) {
        const spectral::Partition part({3, 1.0, alpha});
        for (int i = 0; i < 10000; ++i) {
            const double scale = std::pow(10.0, mag(rng));
            std::vector<double> xi{scale * nd(rng), scale * nd(rng)};
            const double tau = scale * scale * 50.0 * nd(rng), sigma = scale * nd(rng);
            const auto a = part.evaluate(xi, tau, sigma);
            double s = 0.0;
            for (double c : a) s += c * c;
            sum_err = std::max(sum_err, std::abs(s - 1.0));
            const double eta = 1.0 + 9.0 * std::abs(nd(rng));
            std::vector<double> xe{eta * xi[0], eta * xi[1]};
            const auto b = part.evaluate(xe, std::pow(eta, 2.0 / alpha) * tau, eta * sigma);
            for (std::size_t k = 0; k < a.size(); ++k) hom_err = std::max(hom_err, std::abs(a[k] - b[k]));
        }
    }
    return {sum_err <= 1e-12 && hom_err <= 1e-12,
            fmt("max |sum chi^2 - 1| %.1e, homogeneity %.1e (both <= 1e-12)", sum_err, hom_err)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "gradient oracle", gradient_oracle},
        {2, "symbol bound scans", bound_scans},
        {3, "Caputo L1 convergence", caputo_convergence},
        {4, "quantization consistency", quantization_consistency},
        {5, "conjugation identity", conjugation_identity},
        {6, "subelliptic boundedness", subelliptic_boundedness},
        {7, "Carleman boundedness", carleman_boundedness},
        {8, "shifted multiplier rates", shifted_rates},
        {9, "UCP decay", ucp_decay},
        {10, "partition identity", partition_identity},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %2d %-26s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
