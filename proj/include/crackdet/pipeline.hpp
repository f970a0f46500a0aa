#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crackdet/classifier.hpp"
#include "crackdet/hessian.hpp"
#include "crackdet/lattice_graph.hpp"
#include "crackdet/partition.hpp"
#include "crackdet/volume.hpp"

namespace crackdet {

struct StageTimes {
    double facet_ms = 0.0;
    double graph_ms = 0.0;
    double dfs_ms = 0.0;
};

/// Classification record for one subregion.
struct RegionReport {
    std::array<std::size_t, 3> q{};
    Facet facet = Facet::MinusX;
    std::size_t facet_foreground = 0;
    RegionLabel label = RegionLabel::Homogeneous;
    std::size_t max_component = 0;
    std::size_t component_count = 0;
    bool touches_boundary = false;
    StageTimes times;
};

struct DetectOptions {
    std::size_t g = 5;
    std::size_t delta = 2;
    std::optional<double> tau;  ///< defaults to side / delta + 1
    bool crop = false;          ///< trim to the largest cube divisible by g
    GraphOptions graph;
    ClassifyOptions classify;
    Execution exec;
};

struct DetectionReport {
    std::size_t g = 0;
    std::size_t delta = 0;
    double tau = 0.0;
    std::size_t side = 0;  ///< subregion side
    Dims source_dims{};
    Dims used_dims{};
    std::vector<RegionReport> regions;
    double total_ms = 0.0;

    [[nodiscard]] std::size_t count(RegionLabel label) const noexcept;
    [[nodiscard]] std::vector<RegionLabel> labels() const;
};

/// Partition, facet selection, graph construction, DFS and classification for every subregion.
[[nodiscard]] DetectionReport detect(const BinaryVolume& vol, const DetectOptions& options);

/// Header row, one row per region in q order, then a `# summary,...` line. Timing columns are
/// opt-in so that reports are byte-identical across runs and thread counts.
void write_report_csv(const DetectionReport& report, std::ostream& out, bool with_timings = false);

/// Labels in file order plus the g / delta recorded in the summary line.
struct ParsedReport {
    std::vector<std::array<std::size_t, 3>> q;
    std::vector<RegionLabel> labels;
    std::optional<std::size_t> g;
    std::optional<std::size_t> delta;
    bool cropped = false;
};
[[nodiscard]] ParsedReport read_report_csv(std::istream& in);

/// Scales {1, 3, 5, 10}.
[[nodiscard]] ScaleSet default_scales();
/// Parses "1,3,5,10". Throws ParameterError on malformed input.
[[nodiscard]] ScaleSet parse_scales(const std::string& csv);

struct BenchOptions {
    std::size_t delta = 2;
    std::size_t region_side = 16;
    std::uint64_t seed = 1;
    Execution exec;
};

struct BenchRow {
    std::size_t side = 0;
    std::size_t voxels = 0;
    double segment_ms = 0.0;
    double detect_ms = 0.0;

    [[nodiscard]] double total_ms() const noexcept { return segment_ms + detect_ms; }
    [[nodiscard]] double seconds_per_voxel() const noexcept {
        return voxels == 0 ? 0.0 : total_ms() / 1000.0 / static_cast<double>(voxels);
    }
};

/// Times segment + detect on reference scenes; g = max(1, side / region_side).
[[nodiscard]] std::vector<BenchRow> run_bench(std::span<const std::size_t> sides, const ScaleSet& scales,
                                              const BenchOptions& options);
void write_bench_table(std::span<const BenchRow> rows, std::ostream& out);

}  // namespace crackdet
