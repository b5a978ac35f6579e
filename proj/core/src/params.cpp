#include "clab/params.hpp"

#include <cmath>
#include <string>

#include "clab/errors.hpp"

namespace clab {

void ProblemParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(alpha) || !(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
    }
    if (!finite(tau0) || !(tau0 < 0.0)) {
        throw DomainError("tau0 must be strictly negative, got " + std::to_string(tau0));
    }
    if (!finite(X) || !(X > 0.0 && X <= 0.25)) {
        throw DomainError("X must lie in (0, 0.25], got " + std::to_string(X));
    }
    if (!finite(T) || !(T > 0.0)) {
        throw DomainError("T must be positive, got " + std::to_string(T));
    }
    if (n < 1) {
        throw DomainError("n must be at least 1, got " + std::to_string(n));
    }
    if (!finite(l) || !(l > 0.0)) {
        throw DomainError("l must be positive, got " + std::to_string(l));
    }
    if (!finite(eps) || !(eps > 0.0 && eps < T)) {
        throw DomainError("eps must lie in (0, T), got " + std::to_string(eps));
    }
}

PhasePoint PhasePoint::zero(int n) {
    PhasePoint p;
    p.x.assign(static_cast<std::size_t>(n), 0.0);
    p.xi.assign(static_cast<std::size_t>(n), 0.0);
    return p;
}

}  // namespace clab
