#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crackdet/hessian.hpp"
#include "crackdet/lattice_graph.hpp"
#include "crackdet/volume.hpp"

namespace oracle {

inline long long reflect(long long i, long long n) {
    if (n == 1) return 0;
    while (i < 0 || i >= n) {
        if (i < 0) i = -i;
        if (i >= n) i = 2 * (n - 1) - i;
    }
    return i;
}

/// Direct 3D convolution with the tensor-product kernel, mirror boundaries.
inline crackdet::RealField dense_hessian_entry(const crackdet::GrayVolume& vol, int i, int j, double sigma) {
    std::array<int, 3> orders{0, 0, 0};
    ++orders[i];
    ++orders[j];
    const crackdet::ScaleParameter s(sigma);
    const auto kx = crackdet::make_kernel(s, orders[0]);
    const auto ky = crackdet::make_kernel(s, orders[1]);
    const auto kz = crackdet::make_kernel(s, orders[2]);
    const int r = kx.radius;
    const auto d = vol.dims();
    const auto nx = static_cast<long long>(d.nx), ny = static_cast<long long>(d.ny), nz = static_cast<long long>(d.nz);
    std::vector<double> tensor;
    tensor.reserve(static_cast<std::size_t>((2 * r + 1) * (2 * r + 1) * (2 * r + 1)));
    for (int c = -r; c <= r; ++c)
        for (int b = -r; b <= r; ++b)
            for (int a = -r; a <= r; ++a) tensor.push_back(kx.tap(a) * ky.tap(b) * kz.tap(c));
    crackdet::RealField out(d);
    for (long long z = 0; z < nz; ++z)
        for (long long y = 0; y < ny; ++y)
            for (long long x = 0; x < nx; ++x) {
                double acc = 0.0;
                std::size_t t = 0;
                for (int c = -r; c <= r; ++c) {
                    const auto zz = static_cast<std::size_t>(reflect(z - c, nz));
                    for (int b = -r; b <= r; ++b) {
                        const auto yy = static_cast<std::size_t>(reflect(y - b, ny));
                        for (int a = -r; a <= r; ++a, ++t) {
                            const auto xx = static_cast<std::size_t>(reflect(x - a, nx));
                            acc += tensor[t] * static_cast<double>(vol(xx, yy, zz));
                        }
                    }
                }
                out(static_cast<std::size_t>(x), static_cast<std::size_t>(y), static_cast<std::size_t>(z)) = sigma * acc;
            }
    return out;
}

inline double max_abs_diff(const crackdet::RealField& a, const crackdet::RealField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline crackdet::GrayVolume random_volume(crackdet::Dims d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    crackdet::GrayVolume v(d);
    for (auto& x : v.data()) x = u(rng);
    return v;
}

inline crackdet::BinarySlice random_slice(std::size_t w, std::size_t h, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution b(density);
    crackdet::BinarySlice s(w, h);
    for (std::size_t v = 0; v < h; ++v)
        for (std::size_t u = 0; u < w; ++u) s(u, v) = b(rng) ? 1 : 0;
    return s;
}

using Point = std::pair<long long, long long>;  // pixel coordinates
using Partition = std::set<std::set<Point>>;

/// H and K straight from their set definitions, by exhaustive pairwise search.
struct ReducedGraph {
    std::set<Point> lattice;
    std::set<Point> foreground;
    std::set<Point> halo;
};

inline ReducedGraph enumerate_reduced_graph(const crackdet::BinarySlice& s, long long delta) {
    ReducedGraph g;
    for (long long y = 0; y < static_cast<long long>(s.height()); ++y)
        for (long long x = 0; x < static_cast<long long>(s.width()); ++x)
            if (x % delta == 0 && y % delta == 0) {
                g.lattice.insert({x, y});
                if (s(static_cast<std::size_t>(x), static_cast<std::size_t>(y))) g.foreground.insert({x, y});
            }
    for (const auto& p : g.lattice) {
        if (g.foreground.count(p)) continue;
        for (const auto& h : g.foreground) {
            if (std::max(std::llabs(p.first - h.first), std::llabs(p.second - h.second)) == delta) {
                g.halo.insert(p);
                break;
            }
        }
    }
    return g;
}

/// Breadth-first flood fill over `vertices` with Euclidean-distance-delta adjacency.
inline Partition flood_fill(const std::set<Point>& vertices, long long delta) {
    Partition out;
    std::set<Point> seen;
    for (const auto& start : vertices) {
        if (seen.count(start)) continue;
        std::set<Point> comp;
        std::deque<Point> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            const Point p = queue.front();
            queue.pop_front();
            comp.insert(p);
            const Point nbrs[4] = {{p.first - delta, p.second}, {p.first + delta, p.second},
                                   {p.first, p.second - delta}, {p.first, p.second + delta}};
            for (const auto& q : nbrs) {
                if (vertices.count(q) && !seen.count(q)) {
                    seen.insert(q);
                    queue.push_back(q);
                }
            }
        }
        out.insert(std::move(comp));
    }
    return out;
}

inline Partition to_partition(const std::vector<crackdet::Component>& comps, long long delta) {
    Partition out;
    for (const auto& c : comps) {
        std::set<Point> s;
        for (const auto& v : c.vertices) s.insert({static_cast<long long>(v.i) * delta, static_cast<long long>(v.j) * delta});
        out.insert(std::move(s));
    }
    return out;
}

/// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("crackdet_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace oracle
