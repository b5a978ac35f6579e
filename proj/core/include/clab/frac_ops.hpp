#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace clab::frac {

using cplx = std::complex<double>;

/// exp(a * (ln|z| + i arg z)) with arg in (-pi, pi]. Throws DomainError on z = 0.
cplx complex_power(cplx z, double a);

/// (i(tau + i tau0))^alpha, the conjugated Caputo symbol. The base -tau0 + i tau
/// sits in the open right half-plane for tau0 < 0, so the principal branch is
/// never crossed.
cplx caputo_symbol(double alpha, double tau0, double tau);

/// i^alpha (tau + i tau0)^(alpha - 1), the symbol of the fractional integral
/// term produced by the Holmgren shear (without the X/T xi_n factor).
cplx shear_symbol(double alpha, double tau0, double tau);

/// Principal part (i tau)^alpha = |tau|^alpha e^{i sgn(tau) alpha pi/2}; zero at tau = 0.
cplx principal_caputo_symbol(double alpha, double tau);

/// Lambda_alpha^m(tau, xi) = ((1 + |xi|^2)^{1/alpha} + i tau)^{m alpha / 2}.
cplx lambda_alpha(double alpha, double m, double tau, std::span<const double> xi);

/// h(sigma) = (1 + sigma^2)^{1/4}.
double h_multiplier(double sigma);

/// Uniformly sampled u(t_k), t_k = k dt, k = 0..N. values[0] is the Caputo
/// lower limit.
template <class T>
struct TimeSeries {
    std::vector<T> values;
    double dt = 1.0;
};

/// b_j = (j+1)^{1-alpha} - j^{1-alpha}, j = 0..count-1.
std::vector<double> l1_weights(double alpha, std::size_t count);

/// L1 discretization of the Caputo derivative:
///   (d^alpha u)_k = dt^{-alpha} / Gamma(2-alpha) * sum_{j<k} b_j (u_{k-j} - u_{k-j-1}),
/// with output sample 0 equal to zero. Throws DomainError if alpha is outside (0,1)
/// or the series has fewer than two samples.
TimeSeries<double> caputo_l1(const TimeSeries<double>& u, double alpha);
TimeSeries<cplx> caputo_l1(const TimeSeries<cplx>& u, double alpha);

}  // namespace clab::frac
