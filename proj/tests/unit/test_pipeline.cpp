#include <doctest.h>

#include <sstream>

#include "crackdet/evaluation.hpp"
#include "crackdet/pipeline.hpp"
#include "crackdet/synthgen.hpp"

using namespace crackdet;

TEST_CASE("empty volume is homogeneous everywhere") {
    const BinaryVolume v(Dims{250, 250, 250}, 0);
    DetectOptions opt;
    const auto r = detect(v, opt);
    CHECK(r.regions.size() == 125);
    CHECK(r.count(RegionLabel::Homogeneous) == 125);
    CHECK(r.side == 50);
    CHECK(r.tau == 26.0);
    for (const auto& reg : r.regions) {
        CHECK(reg.facet == Facet::MinusX);
        CHECK(reg.component_count == 0);
    }
}

TEST_CASE("axis-aligned plane: halo chains of side / delta vertices") {
    BinaryVolume v(Dims{40, 40, 40}, 0);
    for (std::size_t z = 0; z < 40; ++z)
        for (std::size_t x = 0; x < 40; ++x) v(x, 10, z) = 1;
    DetectOptions opt;
    opt.g = 2;
    opt.delta = 2;
    const auto r = detect(v, opt);
    REQUIRE(r.regions.size() == 8);
    for (const auto& reg : r.regions) {
        CAPTURE(reg.q[1]);
        if (reg.q[1] == 1) {
            CHECK(reg.facet == Facet::MinusX);
            CHECK(reg.facet_foreground == 20);
            CHECK(reg.component_count == 2);
            CHECK(reg.max_component == 10);
            CHECK(reg.touches_boundary);
            CHECK(reg.label == RegionLabel::Inhomogeneous);
        } else {
            CHECK(reg.label == RegionLabel::Homogeneous);
        }
    }
    opt.tau = 9.0;
    CHECK(detect(v, opt).count(RegionLabel::Crack) == 4);
}

TEST_CASE("a fully foreground facet has an empty halo") {
    BinaryVolume v(Dims{20, 20, 20}, 0);
    for (std::size_t z = 0; z < 20; ++z)
        for (std::size_t y = 0; y < 20; ++y) v(0, y, z) = 1;
    DetectOptions opt;
    opt.g = 1;
    const auto r = detect(v, opt);
    CHECK(r.regions[0].facet_foreground == 400);
    CHECK(r.regions[0].component_count == 0);
    CHECK(r.regions[0].label == RegionLabel::Homogeneous);
}

TEST_CASE("oblique crack scene: detections and report round trip") {
    const auto scene = generate(reference_scene(60, 5));
    // Use the ground-truth mask as a perfect segmentation.
    DetectOptions opt;
    opt.g = 3;
    opt.delta = 2;
    const auto report = detect(scene.truth.crack_mask, opt);
    const auto truth = region_truth(scene.truth.crack_mask, partition_domain(Dims{60, 60, 60}, 3));
    const auto m = metrics(confusion(report.labels(), truth));
    MESSAGE("recall " << m.recall << " precision " << m.precision);
    CHECK(m.precision == 1.0);
    CHECK(m.recall > 0.5);

    std::ostringstream csv;
    write_report_csv(report, csv);
    std::istringstream in(csv.str());
    const auto parsed = read_report_csv(in);
    CHECK(parsed.labels == report.labels());
    CHECK(parsed.g == std::optional<std::size_t>{3});
    CHECK(parsed.delta == std::optional<std::size_t>{2});
    CHECK_FALSE(parsed.cropped);
    CHECK(parsed.q.front() == std::array<std::size_t, 3>{1, 1, 1});
    CHECK(csv.str().find("# summary,g=3,delta=2,tau=11,side=20,crop=0") != std::string::npos);

    std::ostringstream timed;
    write_report_csv(report, timed, true);
    std::istringstream tin(timed.str());
    CHECK(read_report_csv(tin).labels == report.labels());
}

TEST_CASE("reports are identical across thread counts") {
    const auto scene = generate(reference_scene(60, 9));
    DetectOptions a;
    a.g = 3;
    DetectOptions b = a;
    b.exec.threads = 8;
    std::ostringstream sa, sb;
    write_report_csv(detect(scene.truth.crack_mask, a), sa);
    write_report_csv(detect(scene.truth.crack_mask, b), sb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("crop and tau options") {
    BinaryVolume v(Dims{23, 21, 22}, 0);
    DetectOptions opt;
    opt.g = 4;
    CHECK_THROWS_AS((void)detect(v, opt), PartitionError);
    opt.crop = true;
    opt.tau = 3.5;
    const auto r = detect(v, opt);
    CHECK(r.used_dims == Dims{20, 20, 20});
    CHECK(r.side == 5);
    CHECK(r.tau == 3.5);
    std::ostringstream csv;
    write_report_csv(r, csv);
    CHECK(csv.str().find("tau=3.5,side=5,crop=1") != std::string::npos);
}

TEST_CASE("report parsing errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS((void)read_report_csv(empty), FormatError);
    std::istringstream bad("qx,qy,qz,facet,facet_foreground,label\n1,1,1,-x,0,Q\n");
    CHECK_THROWS_AS((void)read_report_csv(bad), FormatError);
    std::istringstream noheader("1,1,1,-x,0,H\n");
    CHECK_THROWS_AS((void)read_report_csv(noheader), FormatError);
}

TEST_CASE("scale lists") {
    CHECK(default_scales().size() == 4);
    const auto s = parse_scales("1,2.5,4");
    REQUIRE(s.size() == 3);
    CHECK(s.scales()[1].sigma() == 2.5);
    CHECK_THROWS_AS((void)parse_scales(""), ParameterError);
    CHECK_THROWS_AS((void)parse_scales("1,,3"), ParameterError);
    CHECK_THROWS_AS((void)parse_scales("3,1"), ParameterError);
    CHECK_THROWS_AS((void)parse_scales("1,x"), ParameterError);
}

TEST_CASE("bench rows") {
    const std::vector<std::size_t> sides{16, 24};
    BenchOptions opt;
    opt.region_side = 8;
    const auto rows = run_bench(sides, ScaleSet({1.0}), opt);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].voxels == 24 * 24 * 24);
    CHECK(rows[0].total_ms() > 0.0);
    std::ostringstream out;
    write_bench_table(rows, out);
    CHECK(out.str().rfind("side,voxels,segment_ms,detect_ms,total_ms,seconds_per_voxel\n16,4096,", 0) == 0);
    CHECK_THROWS_AS((void)run_bench(std::vector<std::size_t>{}, ScaleSet({1.0}), opt), ParameterError);
}
