#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "clab/params.hpp"

namespace clab::app {

struct BetaSweep {
    double start = 20.0;
    double stop = 160.0;
    std::size_t count = 4;
    /// Geometric spacing when true, arithmetic otherwise.
    bool log = true;

    [[nodiscard]] std::vector<double> values() const;
};

/// Spectral grid sizes (powers of two). t and x are the time and tangential
/// counts; xn is the normal axis of the Carleman sweep; z the auxiliary axis of
/// the subelliptic suite.
struct GridSizes {
    std::size_t t = 64;
    std::size_t x = 32;
    std::size_t xn = 512;
    std::size_t z = 32;
};

struct ForwardConfig {
    std::size_t steps = 64;
    std::size_t cells = 32;
};

struct UcpConfig {
    int n = 1;
    std::size_t steps = 64;
    std::size_t cells = 1280;
    BetaSweep beta{50.0, 400.0, 8, false};
};

struct RunConfig {
    ProblemParams params;
    GridSizes grid;
    BetaSweep beta;
    std::size_t bound_samples = 10000;
    std::size_t subelliptic_family = 10;
    std::size_t carleman_family = 5;
    ForwardConfig forward;
    UcpConfig ucp;
    std::uint64_t seed = 1;
    std::string out = "carleman-lab-out";
};

/// Parses a JSON object; missing fields take their defaults. Throws ConfigError
/// naming the field on unknown keys, wrong types or broken invariants, and
/// DomainError (also naming the field) for out-of-range model parameters.
RunConfig parse_config_text(std::string_view json);
RunConfig parse_config(const std::filesystem::path& path);

/// Canonical JSON with every field present; parse_config_text inverts it.
std::string to_json(const RunConfig& config);

/// fnv1a of the canonical JSON without the output directory, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace clab::app
