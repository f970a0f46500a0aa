#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "crackdet/volume.hpp"

namespace crackdet {

/// One cubic subregion W(q) of a g x g x g partition; q is 1-based.
struct SubregionSpec {
    std::array<std::size_t, 3> q{};
    CubeBox box{};

    [[nodiscard]] std::size_t side() const noexcept { return box.side; }
};

/// Splits a cubic domain into g^3 equal cubes, q in lexicographic order (q_x slowest).
/// Throws PartitionError for non-cubic dims or a side not divisible by g.
[[nodiscard]] std::vector<SubregionSpec> partition_domain(const Dims& dims, std::size_t g);

/// Largest cube anchored at the origin whose side is a multiple of g.
[[nodiscard]] Dims crop_dims(const Dims& dims, std::size_t g);
[[nodiscard]] BinaryVolume crop_volume(const BinaryVolume& vol, const Dims& target);

/// Face of the subregion with the most foreground; ties go to the first in -x,+x,-y,+y,-z,+z.
[[nodiscard]] FacetSlice select_facet(const BinaryVolume& vol, const SubregionSpec& spec);

}  // namespace crackdet
