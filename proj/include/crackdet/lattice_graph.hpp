#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "crackdet/volume.hpp"

namespace crackdet {

/// Lattice spacing in pixels, >= 1.
class MeshSize {
public:
    explicit MeshSize(std::size_t delta);
    [[nodiscard]] std::size_t value() const noexcept { return delta_; }
    friend bool operator==(const MeshSize&, const MeshSize&) = default;

private:
    std::size_t delta_;
};

/// Lattice coordinates; pixel position is (i * delta, j * delta).
struct LatticeVertex {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    friend constexpr bool operator==(const LatticeVertex&, const LatticeVertex&) = default;
    friend constexpr auto operator<=>(const LatticeVertex& a, const LatticeVertex& b) {
        if (auto c = a.j <=> b.j; c != 0) return c;
        return a.i <=> b.i;
    }
};

struct GraphOptions {
    /// Adds the foreground lattice vertices H to K.
    bool include_foreground = false;
};

/// Reduced lattice graph over the halo vertices K with axis-aligned lattice edges.
///
/// Vertices are kept in row-major lattice order (j slowest); adjacency is CSR with each
/// vertex's neighbours listed as (i-1, j), (i+1, j), (i, j-1), (i, j+1) where present.
class SurfaceLatticeGraph {
public:
    SurfaceLatticeGraph() = default;

    /// Graph on an arbitrary vertex subset of a lattice_w x lattice_h lattice.
    static SurfaceLatticeGraph from_vertices(std::size_t lattice_w, std::size_t lattice_h, MeshSize delta,
                                             std::vector<LatticeVertex> vertices);

    [[nodiscard]] std::size_t delta() const noexcept { return delta_; }
    [[nodiscard]] std::size_t lattice_width() const noexcept { return lattice_w_; }
    [[nodiscard]] std::size_t lattice_height() const noexcept { return lattice_h_; }
    [[nodiscard]] std::size_t lattice_vertex_count() const noexcept { return lattice_w_ * lattice_h_; }
    /// #H, the number of foreground lattice vertices (zero when built from_vertices).
    [[nodiscard]] std::size_t foreground_count() const noexcept { return foreground_count_; }

    [[nodiscard]] std::span<const LatticeVertex> vertices() const noexcept { return vertices_; }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
    [[nodiscard]] std::span<const std::uint32_t> neighbors(std::size_t v) const noexcept {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    [[nodiscard]] bool on_boundary(const LatticeVertex& v) const noexcept {
        return v.i == 0 || v.j == 0 || v.i + 1 == lattice_w_ || v.j + 1 == lattice_h_;
    }

private:
    friend SurfaceLatticeGraph build_graph(const BinarySlice&, MeshSize, const GraphOptions&);
    void build_adjacency();

    std::size_t delta_ = 1;
    std::size_t lattice_w_ = 0;
    std::size_t lattice_h_ = 0;
    std::size_t foreground_count_ = 0;
    std::vector<LatticeVertex> vertices_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint32_t> neighbors_;
};

/// Number of lattice vertices along an extent of `pixels` pixels.
[[nodiscard]] constexpr std::size_t lattice_extent(std::size_t pixels, std::size_t delta) noexcept {
    return pixels == 0 ? 0 : (pixels - 1) / delta + 1;
}

/// Lattice anchored at pixel (0,0). H = foreground lattice vertices; K = non-foreground lattice
/// vertices one lattice step (8-neighbourhood) from H; edges join 4-adjacent K vertices.
[[nodiscard]] SurfaceLatticeGraph build_graph(const BinarySlice& slice, MeshSize delta,
                                              const GraphOptions& options = {});

struct Component {
    std::vector<LatticeVertex> vertices;  ///< discovery order
    bool touches_boundary = false;

    [[nodiscard]] std::size_t size() const noexcept { return vertices.size(); }
};

/// Iterative DFS. Components ordered by their smallest vertex.
[[nodiscard]] std::vector<Component> connected_components(const SurfaceLatticeGraph& graph);

/// Text dump: `v <x> <y>` per vertex in pixel units, then `e <a> <b>` per edge (a < b).
void write_graph_text(const SurfaceLatticeGraph& graph, std::ostream& out);

}  // namespace crackdet
