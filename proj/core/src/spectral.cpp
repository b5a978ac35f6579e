#include "clab/spectral.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "clab/errors.hpp"
#include "clab/fft.hpp"
#include "clab/frac_ops.hpp"

namespace clab::spectral {

namespace {

std::vector<std::vector<double>> dual_axes(const GridSpec& g) {
    std::vector<std::vector<double>> f;
    for (const auto& a : g.axes()) f.push_back(a.frequencies());
    return f;
}

// Multiply a Fourier-side field by m, visiting the dual grid in row-major order.
void scale_fourier(Field& uh, const Multiplier& m) {
    const auto freq = dual_axes(uh.grid());
    std::vector<double> k(uh.grid().rank());
    for_each_index(uh.grid(), [&](std::size_t flat, std::span<const std::size_t> idx) {
        for (std::size_t a = 0; a < idx.size(); ++a) k[a] = freq[a][idx[a]];
        uh[flat] *= m(k);
    });
}

Field inverse_times(const Field& uh, const Multiplier& m) {
    Field tmp = uh;
    scale_fourier(tmp, m);
    return fft::inverse(tmp);
}

struct Layout {
    bool has_t = false;
    std::size_t first_space = 0;
    std::size_t n = 0;
    std::optional<std::size_t> z;
};

Layout layout_of(const ProblemParams& params, const GridSpec& g, bool want_z) {
    Layout L;
    L.has_t = g.time_axis().has_value();
    L.first_space = L.has_t ? 1 : 0;
    L.n = g.space_dim();
    L.z = g.z_axis();
    if (!L.has_t) throw DomainError("operator needs a leading time axis");
    if (L.n != static_cast<std::size_t>(params.n)) {
        throw DomainError("grid has " + std::to_string(L.n) + " space axes, params.n = " + std::to_string(params.n));
    }
    if (want_z != L.z.has_value()) throw DomainError(want_z ? "grid needs a z axis" : "grid must not have a z axis");
    return L;
}

// Physical coordinate arrays of the space axes.
std::vector<std::vector<double>> space_coords(const GridSpec& g, const Layout& L) {
    std::vector<std::vector<double>> c;
    for (std::size_t j = 0; j < L.n; ++j) c.push_back(g.axis(L.first_space + j).coords());
    return c;
}

// out += coef(x) * v pointwise, coef a function of the space indices.
template <class Coef>
void accumulate(Field& out, const Field& v, const Layout& L, Coef&& coef) {
    std::vector<std::size_t> sidx(L.n);
    for_each_index(out.grid(), [&](std::size_t flat, std::span<const std::size_t> idx) {
        for (std::size_t j = 0; j < L.n; ++j) sidx[j] = idx[L.first_space + j];
        out[flat] += coef(std::span<const std::size_t>(sidx)) * v[flat];
    });
}

// Shared core of apply_P, apply_P_psi and apply_P_shifted. shift(k) returns the
// magnitude s multiplying grad psi at a dual point; nullptr means no shift.
Field apply_operator(const ProblemParams& params, const Field& u, const Layout& L,
                     const std::function<double(std::span<const double>)>* shift, Ordering ordering) {
    params.validate();
    u.grid().require_fft_ready();
    require_causal(u);
    const auto& g = u.grid();
    const std::size_t n = L.n;
    const std::size_t s0 = L.first_space;
    const std::size_t xn_axis = s0 + n - 1;
    const auto xs = space_coords(g, L);
    const double X = params.X;

    auto r2 = [&](std::span<const std::size_t> si) {
        double r = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) r += xs[j][si[j]] * xs[j][si[j]];
        return r;
    };
    auto dist = [&](std::span<const std::size_t> si) { return xs[n - 1][si[n - 1]] - X; };

    const Field uh = fft::forward(u);
    Field out(g);

    // coefficient 1: fractional term, |xi'|^2 + xi_n^2, shear term
    {
        const Multiplier m = [&](std::span<const double> k) {
            double xi2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) xi2 += k[s0 + j] * k[s0 + j];
            return frac::caputo_symbol(params.alpha, params.tau0, k[0]) + xi2 +
                   shear_coefficient(params, k[0]) * k[xn_axis];
        };
        out += inverse_times(uh, m);
    }
    // 4|x'|^2 xi_n^2
    if (n > 1) {
        const Field v = inverse_times(uh, [&](std::span<const double> k) { return cplx(k[xn_axis] * k[xn_axis]); });
        accumulate(out, v, L, [&](auto si) { return cplx(4.0 * r2(si)); });
    }
    // 4 x_j xi_j xi_n
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const Field v = inverse_times(uh, [&](std::span<const double> k) { return cplx(k[s0 + j] * k[xn_axis]); });
        accumulate(out, v, L, [&](auto si) { return cplx(4.0 * xs[j][si[j]]); });
    }
    if (shift == nullptr) return out;
    const auto& s = *shift;
    const cplx I{0.0, 1.0};

    // 4i x_j d xi_j s
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const Field v = inverse_times(uh, [&](std::span<const double> k) { return cplx(k[s0 + j] * s(k)); });
        accumulate(out, v, L, [&](auto si) { return 4.0 * I * xs[j][si[j]] * dist(si); });
    }
    // 2i f d xi_n s
    {
        const Field v = inverse_times(uh, [&](std::span<const double> k) { return cplx(k[xn_axis] * s(k)); });
        accumulate(out, v, L, [&](auto si) { return 2.0 * I * (1.0 + 4.0 * r2(si)) * dist(si); });
    }
    // -f d^2 s^2
    {
        const Field v = inverse_times(uh, [&](std::span<const double> k) {
            const double sv = s(k);
            return cplx(sv * sv);
        });
        accumulate(out, v, L, [&](auto si) {
            const double d = dist(si);
            return cplx(-(1.0 + 4.0 * r2(si)) * d * d);
        });
    }
    // i d L(tau) s
    {
        const Field v = inverse_times(uh, [&](std::span<const double> k) { return shear_coefficient(params, k[0]) * s(k); });
        accumulate(out, v, L, [&](auto si) { return I * dist(si); });
    }
    if (ordering == Ordering::Substitution) {
        const Field v = inverse_times(uh, [&](std::span<const double> k) { return cplx(s(k)); });
        accumulate(out, v, L, [&](auto si) { return cplx(1.0 + 4.0 * r2(si)); });
    }
    return out;
}

}  // namespace

Field apply_multiplier(const Field& u, const Multiplier& m) {
    if (u.side() != Side::Physical) throw DomainError("apply_multiplier expects a physical-side field");
    return inverse_times(fft::forward(u), m);
}

Field derivative(const Field& u, std::size_t axis) {
    if (axis >= u.grid().rank()) throw DomainError("derivative axis out of range");
    return apply_multiplier(u, [axis](std::span<const double> k) { return cplx(k[axis]); });
}

void require_causal(const Field& u, double tol) {
    const auto ta = u.grid().time_axis();
    if (!ta) return;
    const double limit = tol * u.max_abs();
    const auto& axis = u.grid().axis(*ta);
    for_each_index(u.grid(), [&](std::size_t flat, std::span<const std::size_t> idx) {
        if (axis.coord(idx[*ta]) <= 0.0 && std::abs(u[flat]) > limit) {
            throw CausalityViolation("field is nonzero at t = " + std::to_string(axis.coord(idx[*ta])));
        }
    });
}

cplx shear_coefficient(const ProblemParams& params, double tau) {
    return params.X / params.T * frac::shear_symbol(params.alpha, params.tau0, tau);
}

Field apply_P(const ProblemParams& params, const Field& u) {
    const auto L = layout_of(params, u.grid(), false);
    return apply_operator(params, u, L, nullptr, Ordering::KohnNirenberg);
}

Field apply_P_psi(const ProblemParams& params, const Field& u, double sigma_shift, Ordering ordering) {
    const auto L = layout_of(params, u.grid(), true);
    const std::size_t zi = *L.z;
    const std::function<double(std::span<const double>)> s = [zi, sigma_shift](std::span<const double> k) {
        return std::abs(k[zi] + sigma_shift);
    };
    return apply_operator(params, u, L, &s, ordering);
}

Field apply_P_shifted(const ProblemParams& params, const Field& w, double beta, Ordering ordering) {
    const auto L = layout_of(params, w.grid(), false);
    const double b = std::abs(beta);
    const std::function<double(std::span<const double>)> s = [b](std::span<const double>) { return b; };
    return apply_operator(params, w, L, &s, ordering);
}

double fourier_weighted_mass(const Field& u, const Multiplier& w) {
    if (u.side() != Side::Physical) throw DomainError("expected a physical-side field");
    const Field uh = fft::forward(u);
    const auto freq = dual_axes(u.grid());
    std::vector<double> k(u.grid().rank());
    double acc = 0.0;
    for_each_index(uh.grid(), [&](std::size_t flat, std::span<const std::size_t> idx) {
        for (std::size_t a = 0; a < idx.size(); ++a) k[a] = freq[a][idx[a]];
        acc += std::norm(w(k)) * std::norm(uh[flat]);
    });
    return acc * u.grid().cell_volume() / static_cast<double>(u.size());
}

double anisotropic_norm_squared(const Field& u, double m, double s) {
    const auto& g = u.grid();
    const auto ta = g.time_axis();
    const auto za = g.z_axis();
    const auto sp = g.space_axes();
    return fourier_weighted_mass(u, [&](std::span<const double> k) {
        double xi2 = 0.0;
        for (auto a : sp) xi2 += k[a] * k[a];
        double w = 1.0 + std::pow(std::sqrt(xi2), s);
        if (ta) w += std::pow(std::abs(k[*ta]), m);
        if (za) w += std::pow(std::abs(k[*za]), s);
        return cplx(w);
    });
}

double anisotropic_norm(const Field& u, double m, double s) { return std::sqrt(anisotropic_norm_squared(u, m, s)); }

double weighted_mass(const Field& u, const std::function<double(std::span<const double>)>& weight) {
    const auto& g = u.grid();
    std::vector<double> c(g.rank());
    double acc = 0.0;
    for_each_index(g, [&](std::size_t flat, std::span<const std::size_t> idx) {
        for (std::size_t a = 0; a < idx.size(); ++a) c[a] = g.axis(a).coord(idx[a]);
        acc += weight(c) * std::norm(u[flat]);
    });
    return acc * g.cell_volume();
}

}  // namespace clab::spectral
