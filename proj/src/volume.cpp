#include "crackdet/volume.hpp"

#include <algorithm>
#include <string>

namespace crackdet {

void check_gray_range(const GrayVolume& vol) {
    const auto data = vol.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const float v = data[i];
        if (!(v >= 0.0f && v <= 1.0f)) {
            throw ParameterError("gray value " + std::to_string(v) + " at linear index " +
                                 std::to_string(i) + " outside [0,1]");
        }
    }
}

std::size_t count_foreground(const BinaryVolume& vol) noexcept {
    const auto d = vol.data();
    return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](std::uint8_t b) { return b != 0; }));
}

std::size_t BinarySlice::count_foreground() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [](std::uint8_t b) { return b != 0; }));
}

std::string_view facet_name(Facet f) noexcept {
    switch (f) {
        case Facet::MinusX: return "-x";
        case Facet::PlusX: return "+x";
        case Facet::MinusY: return "-y";
        case Facet::PlusY: return "+y";
        case Facet::MinusZ: return "-z";
        case Facet::PlusZ: return "+z";
    }
    return "?";
}

Facet parse_facet(std::string_view name) {
    for (Facet f : kAllFacets) {
        if (facet_name(f) == name) return f;
    }
    throw FormatError("unknown facet '" + std::string(name) + "'");
}

namespace {

int facet_axis(Facet f) noexcept { return static_cast<int>(f) / 2; }
bool facet_is_max(Facet f) noexcept { return (static_cast<int>(f) % 2) == 1; }

}  // namespace

std::array<std::size_t, 3> FacetSlice::to_volume(std::size_t u, std::size_t v) const noexcept {
    const int normal = facet_axis(facet);
    const int ua = normal == 0 ? 1 : 0;
    const int va = normal == 2 ? 1 : 2;
    std::array<std::size_t, 3> p = box.origin;
    p[normal] += facet_is_max(facet) ? box.side - 1 : 0;
    p[ua] += u;
    p[va] += v;
    return p;
}

FacetSlice extract_facet(const BinaryVolume& vol, const CubeBox& box, Facet facet) {
    const Dims& d = vol.dims();
    if (box.side == 0) throw DomainError("facet extraction from an empty box");
    for (int a = 0; a < 3; ++a) {
        if (box.origin[a] + box.side > d[a]) {
            throw DomainError("box [" + std::to_string(box.origin[a]) + ", " +
                              std::to_string(box.origin[a] + box.side) + ") exceeds volume extent " +
                              std::to_string(d[a]) + " along axis " + std::to_string(a));
        }
    }
    FacetSlice out;
    out.box = box;
    out.facet = facet;
    out.slice = BinarySlice(box.side, box.side);
    std::size_t fg = 0;
    for (std::size_t v = 0; v < box.side; ++v) {
        for (std::size_t u = 0; u < box.side; ++u) {
            const auto p = out.to_volume(u, v);
            const std::uint8_t b = vol(p[0], p[1], p[2]) != 0 ? 1 : 0;
            out.slice(u, v) = b;
            fg += b;
        }
    }
    out.foreground = fg;
    return out;
}

}  // namespace crackdet
