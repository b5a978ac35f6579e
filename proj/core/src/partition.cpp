#include "clab/partition.hpp"

#include <cmath>

#include "clab/errors.hpp"
#include "clab/geometry.hpp"

namespace clab::spectral {

Partition::Partition(PartitionSpec spec) : spec_(spec) {
    if (spec_.count < 2) throw ConfigError("partition needs at least two pieces");
    if (!(spec_.delta1 > 0.0) || !std::isfinite(spec_.delta1)) throw ConfigError("partition delta1 must be positive");
    if (!(spec_.alpha > 0.0 && spec_.alpha < 1.0)) throw ConfigError("partition alpha must lie in (0,1)");
    r1_lo_ = spec_.delta1 / (1.0 + spec_.delta1);
    r0_hi_ = 2.0 * spec_.delta1 / (1.0 + 2.0 * spec_.delta1);
    if (!(r1_lo_ < r0_hi_)) throw ConfigError("partition overlap is empty");

    // Step 1 separates piece 0 from the rest; steps 2..count-1 split [r0_hi, 1]
    // into overlapping bands.
    breaks_ = {r1_lo_, r0_hi_};
    const std::size_t extra = spec_.count - 2;
    for (std::size_t k = 0; k < extra; ++k) {
        const double w = (1.0 - r0_hi_) / static_cast<double>(extra + 1);
        const double lo = r0_hi_ + w * static_cast<double>(k) + 0.5 * w;
        breaks_.push_back(lo);
        breaks_.push_back(lo + w);
    }
}

double Partition::angular(std::span<const double> xi, double tau, double sigma) const {
    double xi2 = 0.0;
    for (double v : xi) xi2 += v * v;
    const double s2 = sigma * sigma;
    const double N = xi2 + s2 + std::pow(std::abs(tau), spec_.alpha);
    return N > 0.0 ? s2 / N : 0.0;
}

std::vector<double> Partition::raw(double r) const {
    const std::size_t steps = spec_.count - 1;
    std::vector<double> S(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double lo = breaks_[2 * k];
        const double hi = breaks_[2 * k + 1];
        S[k] = geometry::smooth_step((r - lo) / (hi - lo));
    }
    std::vector<double> rho(spec_.count);
    rho[0] = 1.0 - S[0];
    for (std::size_t k = 1; k + 1 < spec_.count; ++k) rho[k] = S[k - 1] * (1.0 - S[k]);
    rho[spec_.count - 1] = S[steps - 1];
    return rho;
}

std::vector<double> Partition::evaluate(std::span<const double> xi, double tau, double sigma) const {
    auto rho = raw(angular(xi, tau, sigma));
    double s = 0.0;
    for (double v : rho) s += v * v;
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : rho) v *= inv;
    return rho;
}

double Partition::piece(std::size_t nu, std::span<const double> xi, double tau, double sigma) const {
    if (nu >= spec_.count) throw DomainError("partition index out of range");
    return evaluate(xi, tau, sigma)[nu];
}

Partition build_partition(const PartitionSpec& spec) { return Partition(spec); }

}  // namespace clab::spectral
