#pragma once

#include "clab/field.hpp"

namespace clab::spectral {

/// Raw:  e^{-i beta z} h(D_z)^j D_z^k (e^{i beta z} g), multiplier h(sigma+beta)^j (sigma+beta)^k.
/// Gj:   multiplier (|sigma+beta| - |beta|)^j.
/// Hjk:  multiplier [h(sigma+beta) - h(beta)]^j sigma^k.
enum class ShiftMode { Raw, Gj, Hjk };

/// Symbol of the shifted operator at sigma. Differences are evaluated in a
/// cancellation-free form so large beta keeps full relative accuracy.
cplx shifted_symbol(ShiftMode mode, double beta, int j, int k, double sigma);

/// Applies the shifted multiplier along the last axis of a rank-1 field g(z).
Field apply_shifted_z_operator(const Field& g, double beta, int j, int k, ShiftMode mode);

/// h(sigma + beta)^j (sigma + beta)^k - h(beta)^j beta^k, evaluated stably.
double shifted_raw_error_symbol(double beta, int j, int k, double sigma);

}  // namespace clab::spectral
