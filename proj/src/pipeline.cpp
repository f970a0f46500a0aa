#include "crackdet/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "crackdet/synthgen.hpp"

namespace crackdet {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::size_t DetectionReport::count(RegionLabel label) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(regions.begin(), regions.end(), [&](const RegionReport& r) { return r.label == label; }));
}

std::vector<RegionLabel> DetectionReport::labels() const {
    std::vector<RegionLabel> out;
    out.reserve(regions.size());
    for (const auto& r : regions) out.push_back(r.label);
    return out;
}

DetectionReport detect(const BinaryVolume& vol, const DetectOptions& options) {
    const auto t0 = Clock::now();
    const MeshSize delta(options.delta);
    DetectionReport report;
    report.g = options.g;
    report.delta = options.delta;
    report.source_dims = vol.dims();

    const BinaryVolume* source = &vol;
    BinaryVolume cropped;
    if (options.crop) {
        const Dims target = crop_dims(vol.dims(), options.g);
        if (target != vol.dims()) {
            cropped = crop_volume(vol, target);
            source = &cropped;
        }
    }
    report.used_dims = source->dims();
    const auto regions = partition_domain(source->dims(), options.g);
    report.side = regions.front().side();
    const ComponentThreshold tau = options.tau ? ComponentThreshold(*options.tau) : default_tau(report.side, delta);
    report.tau = tau.value();
    report.regions.resize(regions.size());

    parallel_for(regions.size(), options.exec, [&](std::size_t k) {
        RegionReport& r = report.regions[k];
        r.q = regions[k].q;
        auto t = Clock::now();
        const FacetSlice facet = select_facet(*source, regions[k]);
        r.times.facet_ms = ms_since(t);
        t = Clock::now();
        const SurfaceLatticeGraph graph = build_graph(facet.slice, delta, options.graph);
        r.times.graph_ms = ms_since(t);
        t = Clock::now();
        const auto comps = connected_components(graph);
        r.times.dfs_ms = ms_since(t);
        r.facet = facet.facet;
        r.facet_foreground = facet.foreground;
        r.component_count = comps.size();
        for (const auto& c : comps) {
            r.max_component = std::max(r.max_component, c.size());
            r.touches_boundary = r.touches_boundary || c.touches_boundary;
        }
        r.label = classify(comps, tau, options.classify);
    });
    report.total_ms = ms_since(t0);
    return report;
}

void write_report_csv(const DetectionReport& report, std::ostream& out, bool with_timings) {
    out << "qx,qy,qz,facet,facet_foreground,label,max_component,components,touches_boundary";
    if (with_timings) out << ",facet_ms,graph_ms,dfs_ms";
    out << '\n';
    char buf[96];
    for (const auto& r : report.regions) {
        out << r.q[0] << ',' << r.q[1] << ',' << r.q[2] << ',' << facet_name(r.facet) << ',' << r.facet_foreground
            << ',' << label_code(r.label) << ',' << r.max_component << ',' << r.component_count << ','
            << (r.touches_boundary ? 1 : 0);
        if (with_timings) {
            std::snprintf(buf, sizeof buf, ",%.4f,%.4f,%.4f", r.times.facet_ms, r.times.graph_ms, r.times.dfs_ms);
            out << buf;
        }
        out << '\n';
    }
    const bool cropped = report.used_dims != report.source_dims;
    out << "# summary,g=" << report.g << ",delta=" << report.delta << ",tau=" << shortest(report.tau)
        << ",side=" << report.side << ",crop=" << (cropped ? 1 : 0) << ",H=" << report.count(RegionLabel::Homogeneous)
        << ",I=" << report.count(RegionLabel::Inhomogeneous) << ",C=" << report.count(RegionLabel::Crack) << '\n';
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::size_t parse_count(const std::string& s, int lineno) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw FormatError("report line " + std::to_string(lineno) + ": expected an integer, got '" + s + "'");
    }
    return v;
}

}  // namespace

ParsedReport read_report_csv(std::istream& in) {
    ParsedReport out;
    std::string line;
    int lineno = 0;
    int label_col = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# summary", 0) == 0) {
            for (const auto& field : split(line, ',')) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = field.substr(0, eq);
                const std::string value = field.substr(eq + 1);
                if (key == "g") out.g = parse_count(value, lineno);
                if (key == "delta") out.delta = parse_count(value, lineno);
                if (key == "crop") out.cropped = value == "1";
            }
            continue;
        }
        if (line[0] == '#') continue;
        const auto cols = split(line, ',');
        if (label_col < 0) {
            const auto it = std::find(cols.begin(), cols.end(), "label");
            if (it == cols.end() || cols.size() < 3 || cols[0] != "qx") {
                throw FormatError("report line " + std::to_string(lineno) + ": missing header with 'qx' and 'label'");
            }
            label_col = static_cast<int>(it - cols.begin());
            continue;
        }
        if (static_cast<int>(cols.size()) <= label_col || cols[static_cast<std::size_t>(label_col)].size() != 1) {
            throw FormatError("report line " + std::to_string(lineno) + ": malformed row");
        }
        out.q.push_back({parse_count(cols[0], lineno), parse_count(cols[1], lineno), parse_count(cols[2], lineno)});
        out.labels.push_back(parse_label(cols[static_cast<std::size_t>(label_col)][0]));
    }
    if (label_col < 0) throw FormatError("report is empty");
    return out;
}

ScaleSet default_scales() { return ScaleSet({1.0, 3.0, 5.0, 10.0}); }

ScaleSet parse_scales(const std::string& csv) {
    std::vector<double> v;
    for (const auto& tok : split(csv, ',')) {
        double x = 0.0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), x);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw ParameterError("malformed scale list '" + csv + "'");
        }
        v.push_back(x);
    }
    return ScaleSet(std::move(v));
}

std::vector<BenchRow> run_bench(std::span<const std::size_t> sides, const ScaleSet& scales,
                                const BenchOptions& options) {
    if (sides.empty()) throw ParameterError("bench needs at least one side length");
    std::vector<BenchRow> rows;
    for (std::size_t side : sides) {
        if (side == 0) throw ParameterError("bench side lengths must be positive");
        const Scene scene = generate(reference_scene(side, options.seed));
        BenchRow row;
        row.side = side;
        row.voxels = side * side * side;
        auto t = Clock::now();
        const BinaryVolume bin = multiscale_filter(scene.volume, scales, options.exec);
        row.segment_ms = ms_since(t);
        DetectOptions det;
        det.g = std::max<std::size_t>(1, side / options.region_side);
        det.delta = options.delta;
        det.crop = true;
        det.exec = options.exec;
        t = Clock::now();
        const DetectionReport report = detect(bin, det);
        row.detect_ms = ms_since(t);
        (void)report;
        rows.push_back(row);
    }
    return rows;
}

void write_bench_table(std::span<const BenchRow> rows, std::ostream& out) {
    out << "side,voxels,segment_ms,detect_ms,total_ms,seconds_per_voxel\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.3f,%.3f,%.3f,%.6e\n", r.side, r.voxels, r.segment_ms, r.detect_ms,
                      r.total_ms(), r.seconds_per_voxel());
        out << buf;
    }
}

}  // namespace crackdet
