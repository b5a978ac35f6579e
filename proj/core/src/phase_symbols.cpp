#include "clab/phase_symbols.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "clab/errors.hpp"
#include "clab/frac_ops.hpp"

namespace clab::symbols {

namespace {

using cplx = std::complex<double>;

// Scalars shared by every formula: g = x'.xi', f = 1 + 4|x'|^2, d = x_n - X, s = |sigma|.
struct Locals {
    double g = 0.0;
    double f = 1.0;
    double d = 0.0;
    double s = 0.0;
    double xp2 = 0.0;
    double xip2 = 0.0;
    double xin = 0.0;
};

Locals locals(const ProblemParams& params, const PhasePoint& pt) {
    Locals L;
    const auto xp = pt.x_prime();
    const auto xip = pt.xi_prime();
    for (std::size_t j = 0; j < xp.size(); ++j) {
        L.g += xp[j] * xip[j];
        L.xp2 += xp[j] * xp[j];
        L.xip2 += xip[j] * xip[j];
    }
    L.f = 1.0 + 4.0 * L.xp2;
    L.d = pt.x_n() - params.X;
    L.s = std::abs(pt.sigma);
    L.xin = pt.xi_n();
    return L;
}

cplx fractional(const ProblemParams& params, double tau, FractionalPart part) {
    return part == FractionalPart::Full ? frac::caputo_symbol(params.alpha, params.tau0, tau)
                                        : frac::principal_caputo_symbol(params.alpha, tau);
}

void check_dims(const ProblemParams& params, const PhasePoint& pt) {
    const auto n = static_cast<std::size_t>(params.n);
    if (pt.x.size() != n || pt.xi.size() != n) {
        throw DomainError("phase point dimension does not match params.n");
    }
}

double quasi_norm(const ProblemParams& params, const PhasePoint& pt) {
    double r = pt.sigma * pt.sigma + std::pow(std::abs(pt.tau), params.alpha);
    for (double v : pt.xi) r += v * v;
    return r;
}

double xi_tau_part(const ProblemParams& params, const PhasePoint& pt) {
    double r = std::pow(std::abs(pt.tau), params.alpha);
    for (double v : pt.xi) r += v * v;
    return r;
}

class Sampler {
public:
    Sampler(const ProblemParams& params, const SampleSpec& spec)
        : params_(params), spec_(spec), rng_(spec.seed) {}

    // x' uniform in the ball |x'|^2 <= X/4, x_n uniform in [xn_lo X, xn_hi X].
    std::vector<double> draw_x() {
        const auto n = static_cast<std::size_t>(params_.n);
        std::vector<double> x(n, 0.0);
        if (n > 1) {
            const double radius = std::sqrt(params_.X / 4.0);
            double norm2 = 0.0;
            for (std::size_t j = 0; j + 1 < n; ++j) {
                x[j] = normal_(rng_);
                norm2 += x[j] * x[j];
            }
            const double r = radius * std::pow(unit_(rng_), 1.0 / static_cast<double>(n - 1));
            const double scale = norm2 > 0.0 ? r / std::sqrt(norm2) : 0.0;
            for (std::size_t j = 0; j + 1 < n; ++j) x[j] *= scale;
        }
        x[n - 1] = params_.X * (spec_.xn_lo + (spec_.xn_hi - spec_.xn_lo) * unit_(rng_));
        return x;
    }

    // Uniform direction on S^{dim-1}.
    std::vector<double> draw_direction(std::size_t dim) {
        std::vector<double> v(dim);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& c : v) {
                c = normal_(rng_);
                norm2 += c * c;
            }
        } while (norm2 == 0.0);
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : v) c *= inv;
        return v;
    }

    // A point with |xi|^2 + sigma^2 + |tau|^alpha = 1.
    PhasePoint draw_sphere_point() {
        const auto n = static_cast<std::size_t>(params_.n);
        PhasePoint pt;
        pt.x = draw_x();
        const auto v = draw_direction(n + 2);
        pt.xi.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
        pt.sigma = v[n];
        pt.tau = signed_root(v[n + 1]);
        return pt;
    }

    // A point with |xi|^2 + |tau|^alpha = 1 and sigma = 0.
    PhasePoint draw_xi_tau_point() {
        const auto n = static_cast<std::size_t>(params_.n);
        PhasePoint pt;
        pt.x = draw_x();
        const auto v = draw_direction(n + 1);
        pt.xi.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
        pt.tau = signed_root(v[n]);
        return pt;
    }

private:
    // w -> tau with |tau|^alpha = w^2.
    double signed_root(double w) const {
        const double mag = std::pow(std::abs(w), 2.0 / params_.alpha);
        return w < 0.0 ? -mag : mag;
    }

    const ProblemParams& params_;
    const SampleSpec& spec_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

// Rescale by the anisotropic dilation so the quasi-norm becomes one.
void project_to_sphere(const ProblemParams& params, PhasePoint& pt) {
    const double N = quasi_norm(params, pt);
    const double eta = 1.0 / std::sqrt(N);
    for (auto& v : pt.xi) v *= eta;
    pt.sigma *= eta;
    pt.tau *= std::pow(eta, 2.0 / params.alpha);
}

struct Scan {
    double worst = std::numeric_limits<double>::infinity();
    PhasePoint argmin;
    std::size_t accepted = 0;
    std::size_t skipped = 0;
    std::size_t flagged = 0;

    void record(double ratio, const PhasePoint& pt) {
        ++accepted;
        if (ratio < worst) {
            worst = ratio;
            argmin = pt;
        }
    }
};

double xprime_sq(const PhasePoint& pt) {
    double r = 0.0;
    for (double v : pt.x_prime()) r += v * v;
    return r;
}

}  // namespace

SymbolValue total_symbol(const ProblemParams& params, const PhasePoint& pt) {
    check_dims(params, pt);
    const Locals L = locals(params, pt);
    cplx v = frac::caputo_symbol(params.alpha, params.tau0, pt.tau);
    v += L.xip2 + 4.0 * L.g * L.xin + L.f * L.xin * L.xin;
    v += (params.X / params.T) * frac::shear_symbol(params.alpha, params.tau0, pt.tau) * L.xin;
    return SymbolValue::of(v);
}

SymbolValue conjugated_principal_symbol(const ProblemParams& params, const PhasePoint& pt,
                                        FractionalPart part) {
    check_dims(params, pt);
    const Locals L = locals(params, pt);
    const cplx fr = fractional(params, pt.tau, part);
    const double re = fr.real() + L.xip2 + 4.0 * L.g * L.xin + L.f * L.xin * L.xin -
                      L.f * L.s * L.s * L.d * L.d;
    const double im = fr.imag() + 4.0 * L.g * L.d * L.s + 2.0 * L.f * L.xin * L.d * L.s;
    return SymbolValue::of({re, im});
}

SymbolGradients symbol_gradients(const ProblemParams& params, const PhasePoint& pt) {
    check_dims(params, pt);
    const Locals L = locals(params, pt);
    const auto n = static_cast<std::size_t>(params.n);
    const auto xp = pt.x_prime();
    const auto xip = pt.xi_prime();
    SymbolGradients G;
    G.xi_re.assign(n, 0.0);
    G.x_im.assign(n, 0.0);
    G.x_re.assign(n, 0.0);
    G.xi_im.assign(n, 0.0);
    const double d = L.d, s = L.s, f = L.f, g = L.g, xin = L.xin;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        G.xi_re[j] = 2.0 * xip[j] + 4.0 * xin * xp[j];
        G.x_im[j] = 4.0 * d * s * xip[j] + 16.0 * xin * d * s * xp[j];
        G.x_re[j] = 4.0 * xin * xip[j] + 8.0 * xin * xin * xp[j] - 8.0 * d * d * s * s * xp[j];
        G.xi_im[j] = 4.0 * d * s * xp[j];
    }
    G.xi_re[n - 1] = 4.0 * g + 2.0 * f * xin;
    G.x_im[n - 1] = 4.0 * g * s + 2.0 * f * xin * s;
    G.x_re[n - 1] = -2.0 * f * d * s * s;
    G.xi_im[n - 1] = 2.0 * f * d * s;
    return G;
}

double poisson_bracket(const ProblemParams& params, const PhasePoint& pt) {
    check_dims(params, pt);
    const Locals L = locals(params, pt);
    const double d = L.d, s = L.s, f = L.f, g = L.g, xin = L.xin;
    const double s3 = s * s * s;
    const double xi_re_x_im = 8.0 * d * s * L.xip2 + 48.0 * g * xin * d * s +
                              64.0 * L.xp2 * xin * xin * d * s + 16.0 * g * g * s +
                              16.0 * f * g * xin * s + 4.0 * f * f * xin * xin * s;
    const double x_re_xi_im = 16.0 * g * xin * d * s + 32.0 * L.xp2 * xin * xin * d * s -
                              32.0 * L.xp2 * d * d * d * s3 - 4.0 * f * f * d * d * s3;
    return xi_re_x_im - x_re_xi_im;
}

double bracket_from_gradients(const SymbolGradients& g) {
    double acc = 0.0;
    for (std::size_t j = 0; j < g.xi_re.size(); ++j) {
        acc += g.xi_re[j] * g.x_im[j] - g.x_re[j] * g.xi_im[j];
    }
    return acc;
}

std::string_view to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::FracReal: return "FracReal";
        case BoundKind::Characteristic: return "Characteristic";
        case BoundKind::Bracket: return "Bracket";
        case BoundKind::Elliptic: return "Elliptic";
        case BoundKind::Hypoelliptic: return "Hypoelliptic";
    }
    return "?";
}

BoundKind bound_kind_from_string(std::string_view name) {
    for (auto k : {BoundKind::FracReal, BoundKind::Characteristic, BoundKind::Bracket,
                   BoundKind::Elliptic, BoundKind::Hypoelliptic}) {
        if (to_string(k) == name) return k;
    }
    throw ConfigError("unknown bound kind '" + std::string(name) + "'");
}

double solve_characteristic_sigma2(const ProblemParams& params, const PhasePoint& pt) {
    PhasePoint probe = pt;
    auto re_at = [&](double s2) {
        probe.sigma = std::sqrt(s2);
        return conjugated_principal_symbol(params, probe, FractionalPart::Principal).re;
    };
    const double f0 = re_at(0.0);
    if (!(f0 > 0.0)) {
        throw RootFindFailure("Re p~ is not positive at sigma = 0");
    }
    double lo = 0.0;
    double hi = 1.0;
    int expansions = 0;
    while (re_at(hi) >= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 1100 || !std::isfinite(hi)) {
            throw RootFindFailure("Re p~ does not change sign in sigma^2");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (re_at(mid) > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

BoundReport verify_symbol_bounds(BoundKind kind, const ProblemParams& params, const SampleSpec& spec) {
    params.validate();
    if (!(spec.threshold > 0.0)) throw ConfigError("threshold must be positive");
    if (spec.samples == 0) throw ConfigError("samples must be positive");

    Scan scan;
    const double alpha = params.alpha;

    if (kind == BoundKind::FracReal) {
        // tau on +-logspace; x, xi, sigma play no role.
        const std::size_t half = std::max<std::size_t>(1, spec.samples / 2);
        PhasePoint pt = PhasePoint::zero(params.n);
        for (std::size_t i = 0; i < half; ++i) {
            const double u = half == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(half - 1);
            const double mag = std::pow(10.0, spec.tau_log_lo + u * (spec.tau_log_hi - spec.tau_log_lo));
            for (double tau : {mag, -mag}) {
                const double re = frac::caputo_symbol(alpha, params.tau0, tau).real();
                pt.tau = tau;
                scan.record(re / std::pow(std::abs(tau), alpha), pt);
            }
        }
    } else {
        Sampler sampler(params, spec);
        const std::size_t max_attempts = spec.samples * spec.max_attempt_factor;
        std::size_t attempts = 0;
        while (scan.accepted < spec.samples && attempts < max_attempts) {
            ++attempts;
            PhasePoint pt;
            if (kind == BoundKind::Characteristic || kind == BoundKind::Bracket) {
                pt = sampler.draw_xi_tau_point();
                try {
                    pt.sigma = std::sqrt(solve_characteristic_sigma2(params, pt));
                } catch (const RootFindFailure&) {
                    ++scan.skipped;
                    continue;
                }
                project_to_sphere(params, pt);
            } else {
                pt = sampler.draw_sphere_point();
            }
            if (xprime_sq(pt) > params.X / 4.0) ++scan.flagged;

            const double rest = xi_tau_part(params, pt);
            const double s2 = pt.sigma * pt.sigma;
            const double N = rest + s2;
            const Locals L = locals(params, pt);
            double ratio = 0.0;
            switch (kind) {
                case BoundKind::Characteristic:
                    ratio = L.d * L.d * s2 / N;
                    break;
                case BoundKind::Bracket:
                    if (s2 < spec.delta1 * rest) continue;
                    ratio = poisson_bracket(params, pt) / std::pow(N, 1.5);
                    break;
                case BoundKind::Elliptic: {
                    if (s2 > 2.0 * spec.delta1 * rest) continue;
                    const auto p = conjugated_principal_symbol(params, pt, FractionalPart::Principal);
                    ratio = std::abs(p.re) / N;
                    break;
                }
                case BoundKind::Hypoelliptic: {
                    if (s2 < spec.delta1 * rest) continue;
                    const auto p = conjugated_principal_symbol(params, pt, FractionalPart::Principal);
                    const double lhs = spec.eta * std::norm(p.value) / std::sqrt(N) +
                                       2.0 * poisson_bracket(params, pt);
                    ratio = lhs / std::pow(N, 1.5);
                    break;
                }
                case BoundKind::FracReal:
                    break;
            }
            scan.record(ratio, pt);
        }
        if (scan.accepted == 0) {
            throw EmptySampleSet(std::string(to_string(kind)) + ": no sample satisfied the region constraint");
        }
    }

    BoundReport report;
    report.kind = kind;
    report.worst_ratio = scan.worst;
    report.argmin = scan.argmin;
    report.samples = scan.accepted;
    report.skipped = scan.skipped;
    report.flagged = scan.flagged;
    report.threshold = spec.threshold;
    report.pass = report.worst_ratio >= spec.threshold;
    return report;
}

std::string to_json(const BoundReport& report) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(report.kind));
    j["worst_ratio"] = report.worst_ratio;
    j["argmin"] = {{"x", report.argmin.x},
                   {"tau", report.argmin.tau},
                   {"xi", report.argmin.xi},
                   {"sigma", report.argmin.sigma}};
    j["samples"] = report.samples;
    j["skipped"] = report.skipped;
    j["flagged"] = report.flagged;
    j["threshold"] = report.threshold;
    j["pass"] = report.pass;
    return j.dump(2);
}

}  // namespace clab::symbols
