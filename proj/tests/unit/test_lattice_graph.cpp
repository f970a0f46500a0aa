#include <doctest.h>

#include <random>
#include <sstream>

#include "crackdet/lattice_graph.hpp"
#include "oracles.hpp"

using namespace crackdet;

TEST_CASE("mesh size must be positive") {
    CHECK_THROWS_AS(MeshSize(0), ParameterError);
    CHECK(MeshSize(3).value() == 3);
}

TEST_CASE("empty slice gives an empty graph") {
    const BinarySlice s(40, 40, 0);
    const auto g = build_graph(s, MeshSize(3));
    CHECK(g.vertex_count() == 0);
    CHECK(g.edge_count() == 0);
    CHECK(connected_components(g).empty());
}

TEST_CASE("single interior foreground vertex yields an 8-ring") {
    BinarySlice s(200, 200, 0);
    s(99, 99) = 1;
    const auto g = build_graph(s, MeshSize(3));
    CHECK(g.foreground_count() == 1);
    REQUIRE(g.vertex_count() == 8);
    CHECK(g.edge_count() == 8);
    std::set<std::pair<long, long>> ring;
    for (const auto& v : g.vertices()) ring.insert({static_cast<long>(v.i) * 3 - 99, static_cast<long>(v.j) * 3 - 99});
    const std::set<std::pair<long, long>> expected{{-3, -3}, {0, -3}, {3, -3}, {-3, 0}, {3, 0}, {-3, 3}, {0, 3}, {3, 3}};
    CHECK(ring == expected);
    const auto comps = connected_components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 8);
    CHECK_FALSE(comps[0].touches_boundary);
}

TEST_CASE("off-lattice foreground is invisible") {
    BinarySlice s(30, 30, 0);
    s(10, 10) = 1;
    CHECK(build_graph(s, MeshSize(3)).vertex_count() == 0);
}

TEST_CASE("vertical stripe gives two parallel chains") {
    BinarySlice s(30, 30, 0);
    for (std::size_t v = 0; v < 30; ++v)
        for (std::size_t u = 6; u <= 8; ++u) s(u, v) = 1;
    const auto g = build_graph(s, MeshSize(3));
    // Oracle: brute-force enumeration of H and K.
    const auto ref = oracle::enumerate_reduced_graph(s, 3);
    CHECK(ref.lattice.size() == 100);
    CHECK(ref.foreground.size() == 10);
    CHECK(ref.halo.size() == 20);
    const auto comps = connected_components(g);
    CHECK(oracle::to_partition(comps, 3) == oracle::flood_fill(ref.halo, 3));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 10);
    CHECK(comps[1].size() == 10);
    CHECK(comps[0].touches_boundary);
    CHECK(comps[1].touches_boundary);
    for (const auto& v : comps[0].vertices) CHECK(v.i == 1);
    for (const auto& v : comps[1].vertices) CHECK(v.i == 3);
}

TEST_CASE("include_foreground adds H to K") {
    BinarySlice s(200, 200, 0);
    s(99, 99) = 1;
    GraphOptions opt;
    opt.include_foreground = true;
    const auto g = build_graph(s, MeshSize(3), opt);
    CHECK(g.vertex_count() == 9);
    CHECK(g.edge_count() == 12);
    const auto comps = connected_components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 9);
}

TEST_CASE("structural invariants on random slices") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t w = 1 + rng() % 70, h = 1 + rng() % 70, delta = 1 + rng() % 6;
        const double density = 0.005 + 0.3 * static_cast<double>(rng() % 1000) / 1000.0;
        const auto s = oracle::random_slice(w, h, density, rng());
        const auto g = build_graph(s, MeshSize(delta));
        CAPTURE(w);
        CAPTURE(h);
        CAPTURE(delta);
        CHECK(g.lattice_vertex_count() == ((w - 1) / delta + 1) * ((h - 1) / delta + 1));
        CHECK(g.vertex_count() <= g.lattice_vertex_count());
        CHECK(g.vertex_count() <= 8 * g.foreground_count());

        const auto ref = oracle::enumerate_reduced_graph(s, static_cast<long long>(delta));
        CHECK(ref.lattice.size() == g.lattice_vertex_count());
        CHECK(ref.foreground.size() == g.foreground_count());
        std::set<oracle::Point> k;
        for (const auto& v : g.vertices()) {
            const oracle::Point p{static_cast<long long>(v.i * delta), static_cast<long long>(v.j * delta)};
            REQUIRE(p.first < static_cast<long long>(w));
            REQUIRE(p.second < static_cast<long long>(h));
            CHECK(s(p.first, p.second) == 0);
            k.insert(p);
        }
        CHECK(k == ref.halo);

        for (std::size_t a = 0; a < g.vertex_count(); ++a) {
            for (auto b : g.neighbors(a)) {
                const auto va = g.vertices()[a], vb = g.vertices()[b];
                const long di = static_cast<long>(va.i) - static_cast<long>(vb.i);
                const long dj = static_cast<long>(va.j) - static_cast<long>(vb.j);
                REQUIRE(di * di + dj * dj == 1);
            }
        }

        const auto comps = connected_components(g);
        std::size_t total = 0;
        std::set<oracle::Point> seen;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            total += comps[c].size();
            bool touches = false;
            for (const auto& v : comps[c].vertices) {
                seen.insert({v.i, v.j});
                touches = touches || g.on_boundary(v);
            }
            CHECK(touches == comps[c].touches_boundary);
            if (c > 0) {
                const auto first_prev = *std::min_element(comps[c - 1].vertices.begin(), comps[c - 1].vertices.end());
                const auto first_this = *std::min_element(comps[c].vertices.begin(), comps[c].vertices.end());
                CHECK(first_prev < first_this);
            }
        }
        CHECK(total == g.vertex_count());
        CHECK(seen.size() == g.vertex_count());
        CHECK(oracle::to_partition(comps, static_cast<long long>(delta)) ==
              oracle::flood_fill(ref.halo, static_cast<long long>(delta)));
    }
}

TEST_CASE("DFS handles a one-million-vertex serpentine component") {
    const std::size_t side = 1000;
    std::vector<LatticeVertex> verts;
    verts.reserve(side * side);
    for (std::uint32_t j = 0; j < side; ++j)
        for (std::uint32_t i = 0; i < side; ++i) verts.push_back({i, j});
    const auto g = SurfaceLatticeGraph::from_vertices(side, side, MeshSize(2), verts);
    CHECK(g.vertex_count() == side * side);
    const auto comps = connected_components(g);
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == side * side);

    // Serpentine: full rows joined by single bridge vertices at alternating ends.
    std::vector<LatticeVertex> snake;
    for (std::uint32_t j = 0; j < 2 * 500 - 1; ++j) {
        if (j % 2 == 0) {
            for (std::uint32_t i = 0; i < 1000; ++i) snake.push_back({i, j});
        } else {
            snake.push_back({(j / 2) % 2 == 0 ? 999u : 0u, j});
        }
    }
    const auto sg = SurfaceLatticeGraph::from_vertices(1000, 999, MeshSize(1), snake);
    const auto sc = connected_components(sg);
    REQUIRE(sc.size() == 1);
    CHECK(sc[0].size() == snake.size());
    CHECK(snake.size() > 500000);
}

TEST_CASE("graph text export") {
    BinarySlice s(10, 10, 0);
    s(4, 4) = 1;
    const auto g = build_graph(s, MeshSize(2));
    std::ostringstream out;
    write_graph_text(g, out);
    const std::string expected =
        "v 2 2\nv 4 2\nv 6 2\nv 2 4\nv 6 4\nv 2 6\nv 4 6\nv 6 6\n"
        "e 0 1\ne 0 3\ne 1 2\ne 2 4\ne 3 5\ne 4 7\ne 5 6\ne 6 7\n";
    CHECK(out.str() == expected);
}

TEST_CASE("from_vertices rejects out-of-lattice vertices") {
    CHECK_THROWS_AS((void)SurfaceLatticeGraph::from_vertices(3, 3, MeshSize(1), {{3, 0}}), DomainError);
}
