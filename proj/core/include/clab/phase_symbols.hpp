#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clab/params.hpp"

namespace clab::symbols {

struct SymbolValue {
    std::complex<double> value;
    double re = 0.0;
    double im = 0.0;

    static SymbolValue of(std::complex<double> v) { return {v, v.real(), v.imag()}; }
};

/// Which version of the fractional term enters the conjugated symbol.
/// Full keeps (i(tau + i tau0))^alpha; Principal uses (i tau)^alpha, which makes
/// the symbol quasi-homogeneous under (xi, tau, sigma) -> (eta xi, eta^{2/alpha} tau, eta sigma).
enum class FractionalPart { Full, Principal };

/// Total symbol p(t,x; tau, xi) of the transformed, exponentially conjugated
/// operator. pt.sigma is ignored.
SymbolValue total_symbol(const ProblemParams& params, const PhasePoint& pt);

/// Principal symbol of P_psi with psi = (x_n - X)^2 / 2. There is no t or z
/// argument: the symbol does not depend on them.
SymbolValue conjugated_principal_symbol(const ProblemParams& params, const PhasePoint& pt,
                                        FractionalPart part = FractionalPart::Full);

struct SymbolGradients {
    std::vector<double> xi_re;  ///< grad_xi Re p~
    std::vector<double> x_im;   ///< grad_x  Im p~
    std::vector<double> x_re;   ///< grad_x  Re p~
    std::vector<double> xi_im;  ///< grad_xi Im p~
};

SymbolGradients symbol_gradients(const ProblemParams& params, const PhasePoint& pt);

/// {Re p~, Im p~} assembled from the two closed-form sums
/// sum(d_xi Re * d_x Im) and sum(d_x Re * d_xi Im).
double poisson_bracket(const ProblemParams& params, const PhasePoint& pt);

/// sum_j (a_j b_j - c_j d_j) for gradients (xi_re, x_im, x_re, xi_im).
double bracket_from_gradients(const SymbolGradients& g);

enum class BoundKind { FracReal, Characteristic, Bracket, Elliptic, Hypoelliptic };

std::string_view to_string(BoundKind kind);
BoundKind bound_kind_from_string(std::string_view name);

/// Sample-set descriptor for the bound scans.
struct SampleSpec {
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    double threshold = 1e-3;
    /// Region split: sigma^2 >= delta1 (|xi|^2 + |tau|^alpha) away from sigma = 0,
    /// and sigma^2 <= 2 delta1 (...) for the elliptic piece.
    double delta1 = 1.0;
    /// Weight on |p~|^2 in the hypoelliptic combination.
    double eta = 100.0;
    /// x_n range of the neighbourhood U, as fractions of X.
    double xn_lo = -0.5;
    double xn_hi = 0.5;
    /// FracReal scan: tau in +-logspace(tau_log_lo, tau_log_hi).
    double tau_log_lo = -2.0;
    double tau_log_hi = 4.0;
    /// Rejection sampling gives up after samples * max_attempt_factor draws.
    std::size_t max_attempt_factor = 50;
};

struct BoundReport {
    BoundKind kind = BoundKind::FracReal;
    double worst_ratio = 0.0;
    PhasePoint argmin;
    std::size_t samples = 0;
    std::size_t skipped = 0;   ///< root-find failures on the characteristic set
    std::size_t flagged = 0;   ///< samples with |x'|^2 > X/4 (none by construction)
    double threshold = 0.0;
    bool pass = false;
};

/// Solves Re p~(x, xi, tau, sigma) = 0 for sigma^2 by bisection, using the
/// principal fractional part. Throws RootFindFailure when no positive root exists.
double solve_characteristic_sigma2(const ProblemParams& params, const PhasePoint& pt);

/// Minimum of (left side)/(right side) of the selected inequality over samples on
/// the anisotropic unit sphere |xi|^2 + sigma^2 + |tau|^alpha = 1, restricted to the
/// kind's region. Throws EmptySampleSet when nothing survives the region filter.
BoundReport verify_symbol_bounds(BoundKind kind, const ProblemParams& params, const SampleSpec& spec);

/// {kind, worst_ratio, argmin:{x,tau,xi,sigma}, samples, threshold, pass}
std::string to_json(const BoundReport& report);

}  // namespace clab::symbols
