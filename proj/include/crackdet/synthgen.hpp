#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crackdet/partition.hpp"
#include "crackdet/volume.hpp"

namespace crackdet {

/// Planar slab {p : |<p - point, n> - r(p)| <= width / 2}, r a bounded sinusoidal roughness.
struct CrackSpec {
    std::array<double, 3> normal{1.0, 0.0, 0.0};
    std::array<double, 3> point{0.0, 0.0, 0.0};
    double width = 3.0;
    double gray = 0.25;
    double roughness_amplitude = 0.0;
    double roughness_period = 32.0;
};

/// Boolean model of balls: Poisson(intensity * #W) centres, radii uniform in [r_min, r_max].
struct PoreProcess {
    double intensity = 0.0;  ///< pores per voxel
    double r_min = 1.0;
    double r_max = 1.0;
    double gray = 0.25;
};

struct SceneConfig {
    Dims dims{64, 64, 64};
    double material = 0.75;
    double noise_sd = 0.0;
    std::vector<CrackSpec> cracks;
    PoreProcess pores;
    std::uint64_t seed = 1;

    /// Throws ParameterError on the first invalid field.
    void validate() const;
};

struct GroundTruth {
    BinaryVolume crack_mask;
    std::size_t pore_count = 0;
};

struct Scene {
    GrayVolume volume;
    GroundTruth truth;
};

/// Material plus Gaussian noise, pores painted over it, cracks painted last; clamped to [0,1].
[[nodiscard]] Scene generate(const SceneConfig& config);

/// Flat `key = value` text, one crack per `crack =` line. Errors carry line numbers.
[[nodiscard]] SceneConfig parse_scene_config(std::string_view text);
[[nodiscard]] SceneConfig read_scene_config(const std::filesystem::path& path);
[[nodiscard]] std::string format_scene_config(const SceneConfig& config);

/// True for every region whose box holds at least one crack voxel.
[[nodiscard]] std::vector<bool> region_truth(const BinaryVolume& crack_mask, std::span<const SubregionSpec> regions);

/// Cube of `side` with one randomly oriented planar crack of width 3 through the central
/// third, about 200 * (side / 250)^3 pores of radius 2..6, and noise sd 0.05.
[[nodiscard]] SceneConfig reference_scene(std::size_t side, std::uint64_t seed);

}  // namespace crackdet
