#include "clab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "clab/errors.hpp"

namespace clab::fft {

namespace {
// FFTW's planner is not re-entrant; execution on a finished plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

void transform(std::span<cplx> data, std::span<const std::size_t> dims, bool forward) {
    std::vector<int> n(dims.begin(), dims.end());
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (total != data.size()) throw DomainError("fft dims do not match data size");
    if (total == 0) return;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), ptr, ptr,
                             forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw DomainError("fftw could not build a plan");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    if (!forward) {
        const double s = 1.0 / static_cast<double>(total);
        for (auto& v : data) v *= s;
    }
}

namespace {
std::vector<std::size_t> dims_of(const GridSpec& g) {
    std::vector<std::size_t> d;
    for (const auto& a : g.axes()) d.push_back(a.count);
    return d;
}
}  // namespace

Field forward(const Field& u) {
    if (u.side() != Side::Physical) throw DomainError("forward FFT expects a physical-side field");
    u.grid().require_fft_ready();
    Field out = u;
    transform(out.data(), dims_of(u.grid()), true);
    out.set_side(Side::Fourier);
    return out;
}

Field inverse(const Field& u) {
    if (u.side() != Side::Fourier) throw DomainError("inverse FFT expects a Fourier-side field");
    u.grid().require_fft_ready();
    Field out = u;
    transform(out.data(), dims_of(u.grid()), false);
    out.set_side(Side::Physical);
    return out;
}

}  // namespace clab::fft
