#include "crackdet/lattice_graph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace crackdet {

MeshSize::MeshSize(std::size_t delta) : delta_(delta) {
    if (delta == 0) throw ParameterError("mesh size delta must be >= 1");
}

namespace {

constexpr std::int64_t kAbsent = -1;

}  // namespace

SurfaceLatticeGraph SurfaceLatticeGraph::from_vertices(std::size_t lattice_w, std::size_t lattice_h,
                                                       MeshSize delta, std::vector<LatticeVertex> vertices) {
    SurfaceLatticeGraph g;
    g.delta_ = delta.value();
    g.lattice_w_ = lattice_w;
    g.lattice_h_ = lattice_h;
    for (const auto& v : vertices) {
        if (v.i >= lattice_w || v.j >= lattice_h) throw DomainError("lattice vertex outside the lattice");
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    g.vertices_ = std::move(vertices);
    g.build_adjacency();
    return g;
}

void SurfaceLatticeGraph::build_adjacency() {
    if (vertices_.size() >= std::numeric_limits<std::uint32_t>::max()) {
        throw ParameterError("lattice graph too large for 32-bit vertex ids");
    }
    std::vector<std::int64_t> id(lattice_w_ * lattice_h_, kAbsent);
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        id[vertices_[k].i + lattice_w_ * vertices_[k].j] = static_cast<std::int64_t>(k);
    }
    offsets_.assign(vertices_.size() + 1, 0);
    neighbors_.clear();
    neighbors_.reserve(vertices_.size() * 4);
    for (std::size_t k = 0; k < vertices_.size(); ++k) {
        const auto [i, j] = vertices_[k];
        auto add = [&](std::size_t ni, std::size_t nj) {
            const std::int64_t n = id[ni + lattice_w_ * nj];
            if (n != kAbsent) neighbors_.push_back(static_cast<std::uint32_t>(n));
        };
        if (i > 0) add(i - 1, j);
        if (i + 1 < lattice_w_) add(i + 1, j);
        if (j > 0) add(i, j - 1);
        if (j + 1 < lattice_h_) add(i, j + 1);
        offsets_[k + 1] = neighbors_.size();
    }
}

SurfaceLatticeGraph build_graph(const BinarySlice& slice, MeshSize delta, const GraphOptions& options) {
    SurfaceLatticeGraph g;
    const std::size_t d = delta.value();
    g.delta_ = d;
    g.lattice_w_ = lattice_extent(slice.width(), d);
    g.lattice_h_ = lattice_extent(slice.height(), d);
    const std::size_t lw = g.lattice_w_;
    const std::size_t lh = g.lattice_h_;

    std::vector<std::uint8_t> fg(lw * lh, 0);
    for (std::size_t j = 0; j < lh; ++j)
        for (std::size_t i = 0; i < lw; ++i) fg[i + lw * j] = slice(i * d, j * d) != 0 ? 1 : 0;
    g.foreground_count_ = static_cast<std::size_t>(std::count(fg.begin(), fg.end(), std::uint8_t{1}));

    for (std::size_t j = 0; j < lh; ++j) {
        for (std::size_t i = 0; i < lw; ++i) {
            const auto here = LatticeVertex{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
            if (fg[i + lw * j]) {
                if (options.include_foreground) g.vertices_.push_back(here);
                continue;
            }
            bool halo = false;
            const std::size_t j0 = j > 0 ? j - 1 : 0;
            const std::size_t j1 = std::min(j + 1, lh - 1);
            const std::size_t i0 = i > 0 ? i - 1 : 0;
            const std::size_t i1 = std::min(i + 1, lw - 1);
            for (std::size_t nj = j0; nj <= j1 && !halo; ++nj)
                for (std::size_t ni = i0; ni <= i1 && !halo; ++ni) halo = fg[ni + lw * nj] != 0;
            if (halo) g.vertices_.push_back(here);
        }
    }
    g.build_adjacency();
    return g;
}

std::vector<Component> connected_components(const SurfaceLatticeGraph& graph) {
    std::vector<Component> out;
    const std::size_t n = graph.vertex_count();
    const auto verts = graph.vertices();
    std::vector<std::uint8_t> visited(n, 0);
    std::vector<std::uint32_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (visited[s]) continue;
        Component comp;
        stack.push_back(static_cast<std::uint32_t>(s));
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            if (visited[v]) continue;
            visited[v] = 1;
            comp.vertices.push_back(verts[v]);
            comp.touches_boundary = comp.touches_boundary || graph.on_boundary(verts[v]);
            const auto nb = graph.neighbors(v);
            for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
                if (!visited[*it]) stack.push_back(*it);
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

void write_graph_text(const SurfaceLatticeGraph& graph, std::ostream& out) {
    const std::size_t d = graph.delta();
    for (const auto& v : graph.vertices()) out << "v " << v.i * d << ' ' << v.j * d << '\n';
    for (std::size_t a = 0; a < graph.vertex_count(); ++a) {
        for (std::uint32_t b : graph.neighbors(a)) {
            if (a < b) out << "e " << a << ' ' << b << '\n';
        }
    }
}

}  // namespace crackdet
