#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace clab {

using cplx = std::complex<double>;

enum class AxisRole { Time, Space, Z };

/// One uniform axis: samples at origin + i * spacing, i = 0..count-1.
struct Axis {
    std::size_t count = 0;
    double spacing = 1.0;
    double origin = 0.0;
    AxisRole role = AxisRole::Space;

    [[nodiscard]] double coord(std::size_t i) const noexcept {
        return origin + spacing * static_cast<double>(i);
    }
    /// Angular frequency of DFT bin i (FFT ordering, Nyquist bin negative).
    [[nodiscard]] double frequency(std::size_t i) const noexcept;
    [[nodiscard]] double length() const noexcept { return spacing * static_cast<double>(count); }
    [[nodiscard]] std::vector<double> coords() const;
    [[nodiscard]] std::vector<double> frequencies() const;

    static Axis time(std::size_t count, double spacing, double origin = 0.0) {
        return {count, spacing, origin, AxisRole::Time};
    }
    static Axis space(std::size_t count, double spacing, double origin) {
        return {count, spacing, origin, AxisRole::Space};
    }
    /// Axis centred on zero covering [-length/2, length/2).
    static Axis centered(std::size_t count, double length, AxisRole role = AxisRole::Space) {
        const double h = length / static_cast<double>(count);
        return {count, h, -0.5 * length, role};
    }

    bool operator==(const Axis&) const = default;
};

/// Row-major tensor grid ordered (t, x_1..x_n, z); the time and z axes are optional.
class GridSpec {
public:
    GridSpec() = default;
    explicit GridSpec(std::vector<Axis> axes);

    [[nodiscard]] std::size_t rank() const noexcept { return axes_.size(); }
    [[nodiscard]] const Axis& axis(std::size_t i) const { return axes_.at(i); }
    [[nodiscard]] const std::vector<Axis>& axes() const noexcept { return axes_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t stride(std::size_t i) const { return strides_.at(i); }

    [[nodiscard]] std::optional<std::size_t> time_axis() const noexcept;
    [[nodiscard]] std::optional<std::size_t> z_axis() const noexcept;
    [[nodiscard]] std::vector<std::size_t> space_axes() const;
    [[nodiscard]] std::size_t space_dim() const noexcept;

    [[nodiscard]] bool fft_ready() const noexcept;
    /// Throws DomainError unless every count is a power of two.
    void require_fft_ready() const;
    [[nodiscard]] double cell_volume() const noexcept;

    bool operator==(const GridSpec& other) const { return axes_ == other.axes_; }

private:
    std::vector<Axis> axes_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

enum class Side { Physical, Fourier };

/// Complex samples on a GridSpec, tagged with the side of the transform they live on.
class Field {
public:
    Field() = default;
    explicit Field(GridSpec grid, Side side = Side::Physical);
    Field(GridSpec grid, std::vector<cplx> data, Side side = Side::Physical);

    /// Samples fn at every physical grid point; coords are ordered like the axes.
    static Field sample(const GridSpec& grid, const std::function<cplx(std::span<const double>)>& fn);

    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
    [[nodiscard]] Side side() const noexcept { return side_; }
    void set_side(Side s) noexcept { side_ = s; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] std::span<cplx> data() noexcept { return data_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }
    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(cplx scale);

    /// sum |u|^2 * cell volume.
    [[nodiscard]] double l2_norm_sq() const;
    [[nodiscard]] double l2_norm() const;
    [[nodiscard]] double max_abs() const;

private:
    GridSpec grid_;
    std::vector<cplx> data_;
    Side side_ = Side::Physical;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(cplx s, Field a);

/// Relative L2 distance ||a - b|| / ||b||.
double relative_l2_error(const Field& a, const Field& b);

/// Calls fn(flat_index, multi_index) over the grid in row-major order.
void for_each_index(const GridSpec& grid,
                    const std::function<void(std::size_t, std::span<const std::size_t>)>& fn);

bool is_power_of_two(std::size_t v) noexcept;

}  // namespace clab
