#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <string>
#include <vector>

#include "crackdet/errors.hpp"

namespace crackdet {

/// Voxel counts along x, y, z.
struct Dims {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::size_t nz = 0;

    [[nodiscard]] constexpr std::size_t count() const noexcept { return nx * ny * nz; }
    [[nodiscard]] constexpr std::size_t operator[](int axis) const noexcept {
        return axis == 0 ? nx : (axis == 1 ? ny : nz);
    }
    [[nodiscard]] constexpr bool is_cube() const noexcept { return nx == ny && ny == nz; }
    friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

/// Linear index with x fastest-varying, then y, then z.
[[nodiscard]] constexpr std::size_t linear_index(const Dims& d, std::size_t x, std::size_t y,
                                                 std::size_t z) noexcept {
    return x + d.nx * (y + d.ny * z);
}

/// Dense 3D raster. Values are stored x-fastest.
template <typename T>
class Raster3D {
public:
    using value_type = T;

    Raster3D() = default;
    explicit Raster3D(Dims dims, T fill = T{}) : dims_(dims), data_(dims.count(), fill) {}
    Raster3D(Dims dims, std::vector<T> data) : dims_(dims), data_(std::move(data)) {
        if (data_.size() != dims_.count()) {
            throw SizeError("raster data length " + std::to_string(data_.size()) + " != " +
                            std::to_string(dims_.count()) + " voxels");
        }
    }

    [[nodiscard]] const Dims& dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

    [[nodiscard]] T& operator()(std::size_t x, std::size_t y, std::size_t z) noexcept {
        return data_[linear_index(dims_, x, y, z)];
    }
    [[nodiscard]] const T& operator()(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return data_[linear_index(dims_, x, y, z)];
    }
    [[nodiscard]] T& operator[](std::size_t i) noexcept { return data_[i]; }
    [[nodiscard]] const T& operator[](std::size_t i) const noexcept { return data_[i]; }

    [[nodiscard]] std::span<T> data() noexcept { return data_; }
    [[nodiscard]] std::span<const T> data() const noexcept { return data_; }

    friend bool operator==(const Raster3D&, const Raster3D&) = default;

private:
    Dims dims_{};
    std::vector<T> data_;
};

/// Gray values in [0,1].
using GrayVolume = Raster3D<float>;
/// One byte per voxel holding 0 or 1; packed to bits only on disk.
using BinaryVolume = Raster3D<std::uint8_t>;
/// Real-valued per-voxel field (Hessian entries, filter responses).
using RealField = Raster3D<double>;

/// Validates the [0,1] range; throws ParameterError on the first offending voxel.
void check_gray_range(const GrayVolume& vol);

[[nodiscard]] std::size_t count_foreground(const BinaryVolume& vol) noexcept;

/// 2D binary image, first axis fastest.
class BinarySlice {
public:
    BinarySlice() = default;
    BinarySlice(std::size_t w, std::size_t h, std::uint8_t fill = 0) : w_(w), h_(h), data_(w * h, fill) {}

    [[nodiscard]] std::size_t width() const noexcept { return w_; }
    [[nodiscard]] std::size_t height() const noexcept { return h_; }
    [[nodiscard]] std::uint8_t& operator()(std::size_t u, std::size_t v) noexcept { return data_[u + w_ * v]; }
    [[nodiscard]] std::uint8_t operator()(std::size_t u, std::size_t v) const noexcept {
        return data_[u + w_ * v];
    }
    [[nodiscard]] std::span<const std::uint8_t> data() const noexcept { return data_; }
    [[nodiscard]] std::size_t count_foreground() const noexcept;

    friend bool operator==(const BinarySlice&, const BinarySlice&) = default;

private:
    std::size_t w_ = 0;
    std::size_t h_ = 0;
    std::vector<std::uint8_t> data_;
};

/// The six faces of an axis-aligned cube, in tie-break order.
enum class Facet : std::uint8_t { MinusX, PlusX, MinusY, PlusY, MinusZ, PlusZ };

inline constexpr std::array<Facet, 6> kAllFacets = {Facet::MinusX, Facet::PlusX, Facet::MinusY,
                                                    Facet::PlusY,  Facet::MinusZ, Facet::PlusZ};

[[nodiscard]] std::string_view facet_name(Facet f) noexcept;
/// Inverse of facet_name; throws FormatError for unknown names.
[[nodiscard]] Facet parse_facet(std::string_view name);

/// Axis-aligned cube [origin, origin + side) in voxel coordinates.
struct CubeBox {
    std::array<std::size_t, 3> origin{};
    std::size_t side = 0;
    friend constexpr bool operator==(const CubeBox&, const CubeBox&) = default;
};

/// Binary image of one face of a cube, with the mapping back to volume coordinates.
///
/// For a face normal to axis a, the slice axes (u, v) are the remaining two axes in
/// increasing order: -x/+x -> (y, z), -y/+y -> (x, z), -z/+z -> (x, y).
struct FacetSlice {
    std::array<std::size_t, 3> q{};  ///< 1-based subregion index, zero when extracted ad hoc
    CubeBox box{};
    Facet facet = Facet::MinusX;
    BinarySlice slice;
    std::size_t foreground = 0;

    /// Volume coordinate (x, y, z) of slice pixel (u, v).
    [[nodiscard]] std::array<std::size_t, 3> to_volume(std::size_t u, std::size_t v) const noexcept;
};

/// Extracts the named face of `box`. Throws DomainError when the box leaves the volume.
[[nodiscard]] FacetSlice extract_facet(const BinaryVolume& vol, const CubeBox& box, Facet facet);

}  // namespace crackdet
