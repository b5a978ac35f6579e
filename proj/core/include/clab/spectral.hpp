#pragma once

#include <functional>
#include <span>

#include "clab/field.hpp"
#include "clab/params.hpp"

namespace clab::spectral {

/// Multiplier evaluated at a dual-grid point; frequencies come in axis order
/// (tau, xi_1..xi_n[, sigma]).
using Multiplier = std::function<cplx(std::span<const double>)>;

/// F^{-1}(m F(u)).
Field apply_multiplier(const Field& u, const Multiplier& m);

/// D_a u = -i d/dx_a u, spectrally.
Field derivative(const Field& u, std::size_t axis);

/// Throws CausalityViolation if |u| > tol * max|u| anywhere with t <= 0.
void require_causal(const Field& u, double tol = 1e-12);

/// L(tau) = (X/T) i^alpha (tau + i tau0)^{alpha-1}, the coefficient of xi_n
/// contributed by the Holmgren shear.
cplx shear_coefficient(const ProblemParams& params, double tau);

/// P on a (t, x_1..x_n) grid: Kohn-Nirenberg quantization of
/// p = (i(tau + i tau0))^alpha + |xi'|^2 + 4 g xi_n + f xi_n^2 + L(tau) xi_n,
/// coefficients applied after multipliers.
Field apply_P(const ProblemParams& params, const Field& u);

/// How the x_n-dependent imaginary shift enters the second-order term.
/// KohnNirenberg expands p(x, xi + i s grad psi) and applies every monomial as
/// coefficient after multiplier. Substitution realizes (D_n + i s (x_n - X))^2
/// literally, which adds f(x') s relative to KohnNirenberg.
enum class Ordering { KohnNirenberg, Substitution };

/// P_psi on a (t, x_1..x_n, z) grid: p(x; tau, xi + i|sigma| grad psi) with
/// grad psi = (0', x_n - X). sigma_shift evaluates the multipliers at
/// sigma + sigma_shift, i.e. returns e^{-i b z} P_psi e^{i b z} for b = sigma_shift.
Field apply_P_psi(const ProblemParams& params, const Field& u, double sigma_shift = 0.0,
                  Ordering ordering = Ordering::KohnNirenberg);

/// p(x, D + i beta grad psi) on a (t, x) grid with the constant shift beta.
Field apply_P_shifted(const ProblemParams& params, const Field& w, double beta,
                      Ordering ordering = Ordering::KohnNirenberg);

/// Discrete quadrature of sum (1 + |xi|^s + |tau|^m [+ |sigma|^s])^2 |u^|^2,
/// normalized so a weight of 1 gives the physical L2 mass. No time axis means
/// no tau term.
double anisotropic_norm_squared(const Field& u, double m, double s);
double anisotropic_norm(const Field& u, double m, double s);

/// Parseval-normalized Fourier-side quadrature of |w|^2 |u^|^2.
double fourier_weighted_mass(const Field& u, const Multiplier& w);

/// sum weight(coords) |u|^2 * cell volume over the physical grid.
double weighted_mass(const Field& u, const std::function<double(std::span<const double>)>& weight);

}  // namespace clab::spectral
