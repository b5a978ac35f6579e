#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "clab/field.hpp"

namespace clab::io {

/// Binary layout (little endian): "CLF1", u32 rank, per axis {u64 count, f64 spacing,
/// f64 origin, u8 role}, u8 side, then count complex64 pairs (re, im as float32).
/// A JSON sidecar <path>.json describes the same header plus `meta`, which must be a
/// JSON object text.
void write_field(const std::filesystem::path& path, const Field& u, std::string_view meta_json = "{}");
Field read_field(const std::filesystem::path& path);

/// Writes text, creating parent directories. Throws IoError.
void write_text(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace clab::io
