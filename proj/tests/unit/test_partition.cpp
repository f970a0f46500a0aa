#include <doctest.h>

#include <random>

#include "crackdet/partition.hpp"

using namespace crackdet;

TEST_CASE("partition counts and sides") {
    const auto p250 = partition_domain(Dims{250, 250, 250}, 5);
    CHECK(p250.size() == 125);
    for (const auto& r : p250) CHECK(r.side() == 50);

    const auto p600 = partition_domain(Dims{600, 600, 600}, 12);
    CHECK(p600.size() == 1728);
    for (const auto& r : p600) CHECK(r.side() == 50);
}

TEST_CASE("partition errors") {
    try {
        (void)partition_domain(Dims{100, 100, 100}, 3);
        FAIL("expected a partition error");
    } catch (const PartitionError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("100") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
    CHECK_THROWS_AS((void)partition_domain(Dims{100, 100, 50}, 5), PartitionError);
    CHECK_THROWS_AS((void)partition_domain(Dims{100, 100, 100}, 0), PartitionError);
}

TEST_CASE("q order is lexicographic and boxes tile the domain") {
    const Dims d{12, 12, 12};
    const auto parts = partition_domain(d, 3);
    for (std::size_t k = 1; k < parts.size(); ++k) CHECK(parts[k - 1].q < parts[k].q);
    CHECK(parts.front().q == std::array<std::size_t, 3>{1, 1, 1});
    CHECK(parts.back().q == std::array<std::size_t, 3>{3, 3, 3});
    std::vector<int> cover(d.count(), 0);
    for (const auto& r : parts) {
        const auto& o = r.box.origin;
        for (std::size_t z = o[2]; z < o[2] + r.side(); ++z)
            for (std::size_t y = o[1]; y < o[1] + r.side(); ++y)
                for (std::size_t x = o[0]; x < o[0] + r.side(); ++x) ++cover[linear_index(d, x, y, z)];
    }
    for (int c : cover) REQUIRE(c == 1);
}

TEST_CASE("crop keeps the largest divisible cube") {
    CHECK(crop_dims(Dims{103, 120, 101}, 5) == Dims{100, 100, 100});
    CHECK(crop_dims(Dims{250, 250, 250}, 5) == Dims{250, 250, 250});
    CHECK_THROWS_AS((void)crop_dims(Dims{3, 3, 3}, 5), PartitionError);
    BinaryVolume v(Dims{5, 6, 7}, 0);
    v(1, 2, 3) = 1;
    const auto c = crop_volume(v, Dims{4, 4, 4});
    CHECK(c.dims() == Dims{4, 4, 4});
    CHECK(c(1, 2, 3) == 1);
    CHECK(count_foreground(c) == 1);
}

TEST_CASE("facet selection") {
    const Dims d{20, 20, 20};
    const SubregionSpec spec{{2, 1, 1}, CubeBox{{10, 0, 0}, 10}};

    SUBCASE("empty subregion returns -x with count 0") {
        const BinaryVolume v(d, 0);
        const auto f = select_facet(v, spec);
        CHECK(f.facet == Facet::MinusX);
        CHECK(f.foreground == 0);
        CHECK(f.q == spec.q);
    }
    SUBCASE("full plane y = b_q selects +y") {
        BinaryVolume v(d, 0);
        for (std::size_t z = 0; z < 10; ++z)
            for (std::size_t x = 10; x < 20; ++x) v(x, 9, z) = 1;
        const auto f = select_facet(v, spec);
        CHECK(f.facet == Facet::PlusY);
        CHECK(f.foreground == 100);
    }
    SUBCASE("strict maximum wins over an earlier facet") {
        BinaryVolume v(d, 0);
        for (std::size_t k = 0; k < 10; ++k) v(10, k, 5) = 1;  // -x face: 10 pixels
        for (std::size_t k = 0; k < 10; ++k) v(10 + k, 3, 9) = 1;  // +z face: 10 pixels, one shared with -x
        v(15, 6, 9) = 1;
        v(16, 6, 9) = 1;
        v(17, 6, 9) = 1;
        const auto minus_x = extract_facet(v, spec.box, Facet::MinusX);
        const auto plus_z = extract_facet(v, spec.box, Facet::PlusZ);
        CHECK(minus_x.foreground == 11);
        CHECK(plus_z.foreground == 13);
        CHECK(select_facet(v, spec).facet == Facet::PlusZ);
    }
}

TEST_CASE("selected count equals the brute-force maximum over six facets") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        BinaryVolume v(Dims{16, 16, 16});
        const double density = static_cast<double>(rng() % 100) / 1000.0;
        std::bernoulli_distribution b(density);
        for (auto& x : v.data()) x = b(rng) ? 1 : 0;
        for (const auto& spec : partition_domain(v.dims(), 2)) {
            std::size_t best = 0;
            Facet best_f = Facet::MinusX;
            for (Facet f : kAllFacets) {
                std::size_t n = 0;
                const auto s = extract_facet(v, spec.box, f);
                for (auto px : s.slice.data()) n += px;
                if (n > best) {
                    best = n;
                    best_f = f;
                }
            }
            const auto sel = select_facet(v, spec);
            REQUIRE(sel.foreground == best);
            REQUIRE(sel.facet == best_f);
        }
    }
}
