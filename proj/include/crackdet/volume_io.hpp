#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crackdet/volume.hpp"

namespace crackdet {

enum class ValueKind : std::uint8_t { U8, U16, F32, Bit };

[[nodiscard]] std::string_view kind_name(ValueKind k) noexcept;

/// Contents of a `NAME.meta` sidecar. Payload is always little-endian, x-fastest.
struct VolumeHeader {
    Dims dims{};
    ValueKind kind = ValueKind::F32;

    [[nodiscard]] std::size_t payload_bytes() const noexcept;
};

/// `NAME`, `NAME.raw` or `NAME.meta` all resolve to the same pair of files.
struct VolumePaths {
    std::filesystem::path raw;
    std::filesystem::path meta;
};
[[nodiscard]] VolumePaths volume_paths(const std::filesystem::path& path);

/// Parses the sidecar text. Throws FormatError naming the offending field.
[[nodiscard]] VolumeHeader parse_header(std::string_view text);
[[nodiscard]] std::string format_header(const VolumeHeader& header);

[[nodiscard]] VolumeHeader read_header(const std::filesystem::path& path);

using AnyVolume = std::variant<GrayVolume, BinaryVolume>;

/// Reads a volume. Integer kinds are divided by the type maximum; `bit` yields a BinaryVolume.
[[nodiscard]] AnyVolume read_volume(const std::filesystem::path& path);
/// Convenience wrappers that reject the other variant with a FormatError.
[[nodiscard]] GrayVolume read_gray_volume(const std::filesystem::path& path);
[[nodiscard]] BinaryVolume read_binary_volume(const std::filesystem::path& path);

/// Writes a gray volume as f32 (bit-exact) or quantized u8/u16 (round to nearest).
void write_volume(const GrayVolume& vol, const std::filesystem::path& path,
                  ValueKind kind = ValueKind::F32);
void write_volume(const BinaryVolume& vol, const std::filesystem::path& path);

/// Bit packing, 8 voxels per byte, LSB first, zero padded.
[[nodiscard]] std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
[[nodiscard]] std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> packed, std::size_t count);

/// 8-bit image, row-major with the first axis fastest.
struct GrayImage8 {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;
};

/// Gray value -> byte via floor(v * 255 + 0.5), clamped.
[[nodiscard]] std::uint8_t quantize_u8(float v) noexcept;

/// Axis-normal slice at `index` (0 = x, 1 = y, 2 = z). Image axes follow FacetSlice ordering.
/// Throws DomainError for out-of-range axis or index.
[[nodiscard]] GrayImage8 render_slice(const AnyVolume& vol, int axis, std::size_t index);
[[nodiscard]] GrayImage8 render_slice(const BinarySlice& slice);

/// Binary PGM: `P5\n<w> <h>\n255\n` followed by the pixel bytes.
[[nodiscard]] std::vector<std::uint8_t> encode_pgm(const GrayImage8& img);
void write_pgm(const GrayImage8& img, const std::filesystem::path& path);

}  // namespace crackdet
