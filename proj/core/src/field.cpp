#include "clab/field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "clab/errors.hpp"

namespace clab {

bool is_power_of_two(std::size_t v) noexcept { return v != 0 && (v & (v - 1)) == 0; }

double Axis::frequency(std::size_t i) const noexcept {
    const auto N = static_cast<std::ptrdiff_t>(count);
    auto k = static_cast<std::ptrdiff_t>(i);
    if (k >= N / 2 && !(N == 1)) k -= N;
    return 2.0 * std::numbers::pi * static_cast<double>(k) / length();
}

std::vector<double> Axis::coords() const {
    std::vector<double> c(count);
    for (std::size_t i = 0; i < count; ++i) c[i] = coord(i);
    return c;
}

std::vector<double> Axis::frequencies() const {
    std::vector<double> c(count);
    for (std::size_t i = 0; i < count; ++i) c[i] = frequency(i);
    return c;
}

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw DomainError("GridSpec needs at least one axis");
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        const auto& a = axes_[i];
        if (a.count == 0) throw DomainError("GridSpec axis " + std::to_string(i) + " has no samples");
        if (!(a.spacing > 0.0) || !std::isfinite(a.spacing)) {
            throw DomainError("GridSpec axis " + std::to_string(i) + " has non-positive spacing");
        }
        if (a.role == AxisRole::Time && i != 0) throw DomainError("time axis must come first");
        if (a.role == AxisRole::Z && i + 1 != axes_.size()) throw DomainError("z axis must come last");
    }
    strides_.assign(axes_.size(), 1);
    for (std::size_t i = axes_.size() - 1; i > 0; --i) strides_[i - 1] = strides_[i] * axes_[i].count;
    size_ = strides_[0] * axes_[0].count;
}

std::optional<std::size_t> GridSpec::time_axis() const noexcept {
    if (!axes_.empty() && axes_.front().role == AxisRole::Time) return 0;
    return std::nullopt;
}

std::optional<std::size_t> GridSpec::z_axis() const noexcept {
    if (!axes_.empty() && axes_.back().role == AxisRole::Z) return axes_.size() - 1;
    return std::nullopt;
}

std::vector<std::size_t> GridSpec::space_axes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (axes_[i].role == AxisRole::Space) out.push_back(i);
    }
    return out;
}

std::size_t GridSpec::space_dim() const noexcept {
    std::size_t n = 0;
    for (const auto& a : axes_) n += a.role == AxisRole::Space ? 1 : 0;
    return n;
}

bool GridSpec::fft_ready() const noexcept {
    for (const auto& a : axes_) {
        if (!is_power_of_two(a.count)) return false;
    }
    return !axes_.empty();
}

void GridSpec::require_fft_ready() const {
    if (!fft_ready()) throw DomainError("grid sample counts must be powers of two");
}

double GridSpec::cell_volume() const noexcept {
    double v = 1.0;
    for (const auto& a : axes_) v *= a.spacing;
    return v;
}

Field::Field(GridSpec grid, Side side) : grid_(std::move(grid)), data_(grid_.size()), side_(side) {}

Field::Field(GridSpec grid, std::vector<cplx> data, Side side)
    : grid_(std::move(grid)), data_(std::move(data)), side_(side) {
    if (data_.size() != grid_.size()) throw DomainError("Field data size does not match grid");
}

Field Field::sample(const GridSpec& grid, const std::function<cplx(std::span<const double>)>& fn) {
    Field out(grid);
    std::vector<double> coords(grid.rank());
    for_each_index(grid, [&](std::size_t flat, std::span<const std::size_t> idx) {
        for (std::size_t a = 0; a < idx.size(); ++a) coords[a] = grid.axis(a).coord(idx[a]);
        out.data_[flat] = fn(coords);
    });
    return out;
}

namespace {
void require_compatible(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid()) || a.side() != b.side()) {
        throw DomainError("field arithmetic on incompatible grids or sides");
    }
}
}  // namespace

Field& Field::operator+=(const Field& other) {
    require_compatible(*this, other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_compatible(*this, other);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Field& Field::operator*=(cplx scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

double Field::l2_norm_sq() const {
    double acc = 0.0;
    for (const auto& v : data_) acc += std::norm(v);
    return acc * grid_.cell_volume();
}

double Field::l2_norm() const { return std::sqrt(l2_norm_sq()); }

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(cplx s, Field a) { return a *= s; }

double relative_l2_error(const Field& a, const Field& b) {
    const double denom = b.l2_norm();
    const double num = (a - b).l2_norm();
    return denom > 0.0 ? num / denom : num;
}

void for_each_index(const GridSpec& grid,
                    const std::function<void(std::size_t, std::span<const std::size_t>)>& fn) {
    const std::size_t rank = grid.rank();
    std::vector<std::size_t> idx(rank, 0);
    const std::size_t total = grid.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        fn(flat, idx);
        for (std::size_t a = rank; a-- > 0;) {
            if (++idx[a] < grid.axis(a).count) break;
            idx[a] = 0;
        }
    }
}

}  // namespace clab
