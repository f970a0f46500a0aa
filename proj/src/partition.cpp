#include "crackdet/partition.hpp"

#include <algorithm>
#include <string>

namespace crackdet {

std::vector<SubregionSpec> partition_domain(const Dims& dims, std::size_t g) {
    if (g == 0) throw PartitionError("partition count g must be positive");
    if (!dims.is_cube()) {
        throw PartitionError("partition requires a cubic volume, got " + std::to_string(dims.nx) + "x" +
                             std::to_string(dims.ny) + "x" + std::to_string(dims.nz));
    }
    if (dims.nx % g != 0) {
        throw PartitionError("volume side " + std::to_string(dims.nx) + " is not divisible by g = " +
                             std::to_string(g));
    }
    const std::size_t side = dims.nx / g;
    std::vector<SubregionSpec> out;
    out.reserve(g * g * g);
    for (std::size_t qx = 1; qx <= g; ++qx) {
        for (std::size_t qy = 1; qy <= g; ++qy) {
            for (std::size_t qz = 1; qz <= g; ++qz) {
                out.push_back({{qx, qy, qz}, CubeBox{{(qx - 1) * side, (qy - 1) * side, (qz - 1) * side}, side}});
            }
        }
    }
    return out;
}

Dims crop_dims(const Dims& dims, std::size_t g) {
    if (g == 0) throw PartitionError("partition count g must be positive");
    const std::size_t m = std::min({dims.nx, dims.ny, dims.nz});
    const std::size_t side = (m / g) * g;
    if (side == 0) {
        throw PartitionError("volume extent " + std::to_string(m) + " is smaller than g = " + std::to_string(g));
    }
    return {side, side, side};
}

BinaryVolume crop_volume(const BinaryVolume& vol, const Dims& target) {
    const Dims& d = vol.dims();
    if (target.nx > d.nx || target.ny > d.ny || target.nz > d.nz) throw DomainError("crop target exceeds volume");
    if (target == d) return vol;
    BinaryVolume out(target);
    for (std::size_t z = 0; z < target.nz; ++z)
        for (std::size_t y = 0; y < target.ny; ++y)
            for (std::size_t x = 0; x < target.nx; ++x) out(x, y, z) = vol(x, y, z);
    return out;
}

FacetSlice select_facet(const BinaryVolume& vol, const SubregionSpec& spec) {
    FacetSlice best = extract_facet(vol, spec.box, kAllFacets[0]);
    for (std::size_t f = 1; f < kAllFacets.size(); ++f) {
        FacetSlice cand = extract_facet(vol, spec.box, kAllFacets[f]);
        if (cand.foreground > best.foreground) best = std::move(cand);
    }
    best.q = spec.q;
    return best;
}

}  // namespace crackdet
