#pragma once

#include <cstddef>
#include <span>

#include "clab/field.hpp"

namespace clab::fft {

/// Multi-dimensional DFT over every axis, sign -1 (matches u^ = int e^{-i x.xi} u).
/// Unnormalized; inverse() divides by the total sample count.
Field forward(const Field& u);
Field inverse(const Field& u);

/// In-place transform of a row-major block with the given dims.
void transform(std::span<cplx> data, std::span<const std::size_t> dims, bool forward);

}  // namespace clab::fft
