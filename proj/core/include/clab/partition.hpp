#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace clab::spectral {

/// Anisotropic partition of unity in the dual variables (xi, tau, sigma).
/// Pieces depend only on r = sigma^2 / (|xi|^2 + sigma^2 + |tau|^alpha), so they are
/// invariant under (xi, tau, sigma) -> (eta xi, eta^{2/alpha} tau, eta sigma).
struct PartitionSpec {
    std::size_t count = 3;
    double delta1 = 1.0;
    double alpha = 0.5;
};

class Partition {
public:
    /// Throws ConfigError for count < 2, delta1 <= 0 or alpha outside (0,1).
    explicit Partition(PartitionSpec spec);

    [[nodiscard]] std::size_t size() const noexcept { return spec_.count; }
    [[nodiscard]] const PartitionSpec& spec() const noexcept { return spec_; }

    /// r in [0,1]; 0 at the origin.
    [[nodiscard]] double angular(std::span<const double> xi, double tau, double sigma) const;

    /// All chi_nu at one dual point; sum of squares is 1.
    [[nodiscard]] std::vector<double> evaluate(std::span<const double> xi, double tau, double sigma) const;
    [[nodiscard]] double piece(std::size_t nu, std::span<const double> xi, double tau, double sigma) const;

    /// Piece 0 vanishes for r >= r0_hi, i.e. outside sigma^2 <= 2 delta1 (|xi|^2 + |tau|^alpha).
    [[nodiscard]] double r0_hi() const noexcept { return r0_hi_; }
    /// Pieces 1.. vanish for r <= r1_lo, i.e. outside sigma^2 >= delta1 (|xi|^2 + |tau|^alpha).
    [[nodiscard]] double r1_lo() const noexcept { return r1_lo_; }

private:
    [[nodiscard]] std::vector<double> raw(double r) const;

    PartitionSpec spec_;
    double r1_lo_ = 0.0;
    double r0_hi_ = 0.0;
    std::vector<double> breaks_;  // transition intervals [breaks_[2k], breaks_[2k+1]]
};

Partition build_partition(const PartitionSpec& spec);

}  // namespace clab::spectral
