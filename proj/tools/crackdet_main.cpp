// crackdet: command-line front end for the crack pre-detection pipeline.
//
//   crackdet gen CONFIG OUT_PREFIX        synthetic volume + crack mask
//   crackdet segment IN OUT               Maximal Hessian Entry binarization
//   crackdet detect IN                    per-region report CSV
//   crackdet eval REPORT MASK             precision / recall / F1
//   crackdet render VOLUME OUT.pgm        one axis-normal slice as PGM
//   crackdet bench --sides 64,128         runtime scaling table

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "crackdet/classifier.hpp"
#include "crackdet/evaluation.hpp"
#include "crackdet/hessian.hpp"
#include "crackdet/lattice_graph.hpp"
#include "crackdet/partition.hpp"
#include "crackdet/pipeline.hpp"
#include "crackdet/synthgen.hpp"
#include "crackdet/volume_io.hpp"

namespace fs = std::filesystem;
using namespace crackdet;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240508;

Execution make_exec(unsigned threads) { return Execution{threads == 0 ? 1u : threads}; }

std::vector<std::size_t> parse_sizes(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || v <= 0) throw ParameterError("malformed size list '" + csv + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

int parse_axis(const std::string& s) {
    if (s == "x" || s == "0") return 0;
    if (s == "y" || s == "1") return 1;
    if (s == "z" || s == "2") return 2;
    throw ParameterError("axis must be x, y or z");
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

fs::path mask_prefix(const fs::path& prefix) {
    fs::path p = prefix;
    p += "_mask";
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fast crack pre-detection in 3D volumes"};
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads (output is identical for every value)")->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic volume and its crack mask");
    std::string gen_config, gen_out, gen_kind = "f32";
    std::optional<std::uint64_t> gen_seed;
    gen->add_option("config", gen_config, "Scene config file")->required();
    gen->add_option("out_prefix", gen_out, "Output prefix; writes PREFIX.{raw,meta}, PREFIX_mask.{raw,meta}, PREFIX.scene")
        ->required();
    gen->add_option("--kind", gen_kind, "Gray payload kind")->check(CLI::IsMember({"f32", "u8", "u16"}));
    gen->add_option("--seed", gen_seed, "Override the config seed");

    // segment
    auto* seg = app.add_subcommand("segment", "Binarize a gray volume with the Maximal Hessian Entry filter");
    std::string seg_in, seg_out, seg_scales = "1,3,5,10";
    seg->add_option("input", seg_in, "Gray volume")->required();
    seg->add_option("output", seg_out, "Binary volume prefix")->required();
    seg->add_option("--scales", seg_scales, "Comma-separated scales")->capture_default_str();

    // detect
    auto* det = app.add_subcommand("detect", "Classify subregions of a binary volume");
    std::string det_in, det_out, det_dump;
    std::size_t det_g = 5, det_delta = 2;
    std::optional<double> det_tau, det_alpha, det_area;
    double det_eps = 0.1;
    bool det_crop = false, det_incl_fg = false, det_uncond = false, det_timings = false;
    det->add_option("input", det_in, "Binary volume")->required();
    det->add_option("--g", det_g, "Subdivisions per axis")->capture_default_str()->check(CLI::PositiveNumber);
    det->add_option("--delta", det_delta, "Lattice mesh size")->capture_default_str()->check(CLI::PositiveNumber);
    det->add_option("--tau", det_tau, "Component threshold (default side/delta + 1)");
    det->add_option("--alpha", det_alpha, "Miss-probability level for the mesh-size check");
    det->add_option("--area", det_area, "Crack cross-section area |C0| for the mesh-size check");
    det->add_option("--epsilon", det_eps, "Epsilon for the mesh-size check")->capture_default_str();
    det->add_flag("--crop", det_crop, "Trim to the largest cube divisible by g");
    det->add_flag("--include-foreground", det_incl_fg, "Add foreground lattice vertices to the graph");
    det->add_flag("--unconditional-crack-rule", det_uncond, "Apply the size rule to every region");
    det->add_flag("--timings", det_timings, "Append per-stage timing columns");
    det->add_option("--out", det_out, "Report CSV (default stdout)");
    det->add_option("--dump-graphs", det_dump, "Directory for per-region graph text dumps");

    // eval
    auto* ev = app.add_subcommand("eval", "Score a detection report against a crack mask");
    std::string ev_pred, ev_mask, ev_out, ev_image;
    std::size_t ev_g = 0;
    ev->add_option("report", ev_pred, "Report CSV from detect")->required();
    ev->add_option("mask", ev_mask, "Ground-truth crack mask (binary volume)")->required();
    ev->add_option("--g", ev_g, "Subdivisions per axis (default: from the report)");
    ev->add_option("--image", ev_image, "Image name for the metrics row");
    ev->add_option("--out", ev_out, "Metrics CSV (default stdout)");

    // render
    auto* ren = app.add_subcommand("render", "Write one axis-normal slice as binary PGM");
    std::string ren_in, ren_out, ren_axis = "z";
    std::size_t ren_index = 0;
    ren->add_option("volume", ren_in, "Gray or binary volume")->required();
    ren->add_option("output", ren_out, "PGM path")->required();
    ren->add_option("--axis", ren_axis, "x, y or z")->capture_default_str();
    ren->add_option("--index", ren_index, "Slice index")->capture_default_str();

    // bench
    auto* ben = app.add_subcommand("bench", "Time segment + detect on synthetic volumes");
    std::string ben_sides, ben_scales = "1,3,5,10";
    BenchOptions ben_opts;
    std::uint64_t ben_seed = kDefaultSeed;
    ben->add_option("--sides", ben_sides, "Comma-separated cube sides")->required();
    ben->add_option("--scales", ben_scales, "Comma-separated scales")->capture_default_str();
    ben->add_option("--delta", ben_opts.delta, "Lattice mesh size")->capture_default_str();
    ben->add_option("--region-side", ben_opts.region_side, "Target subregion side")->capture_default_str();
    ben->add_option("--seed", ben_seed, "Scene seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    const Execution exec = make_exec(threads);

    try {
        if (*gen) {
            SceneConfig cfg = read_scene_config(gen_config);
            if (gen_seed) cfg.seed = *gen_seed;
            const Scene scene = generate(cfg);
            const ValueKind kind = gen_kind == "u8" ? ValueKind::U8 : gen_kind == "u16" ? ValueKind::U16 : ValueKind::F32;
            write_volume(scene.volume, gen_out, kind);
            write_volume(scene.truth.crack_mask, mask_prefix(gen_out));
            fs::path echo = gen_out;
            echo += ".scene";
            write_text(echo, format_scene_config(cfg));
            std::cout << "pores=" << scene.truth.pore_count << " crack_voxels=" << count_foreground(scene.truth.crack_mask)
                      << '\n';
        } else if (*seg) {
            const ScaleSet scales = parse_scales(seg_scales);
            const GrayVolume vol = read_gray_volume(seg_in);
            const FilterResult res = run_multiscale_filter(vol, scales, exec);
            write_volume(res.combined, seg_out);
            for (const auto& s : res.per_scale) {
                std::printf("sigma=%g time_ms=%.1f foreground=%zu\n", s.sigma, s.milliseconds, s.foreground);
            }
            std::printf("foreground=%zu\n", count_foreground(res.combined));
        } else if (*det) {
            if (det_alpha || det_area) {
                if (!det_alpha || !det_area) throw ParameterError("--alpha and --area must be given together");
                CrackGeometry geom;
                geom.alpha = *det_alpha;
                geom.epsilon = det_eps;
                geom.length = *det_area;
                geom.width = 1.0;
                const std::size_t dmax = delta_max(geom);
                if (det_delta > dmax) {
                    std::cerr << "warning: Δ exceeds Δ_max=" << dmax << " (delta " << det_delta
                              << " > delta_max " << dmax << " for alpha " << *det_alpha << ")\n";
                }
            }
            const BinaryVolume vol = read_binary_volume(det_in);
            DetectOptions opt;
            opt.g = det_g;
            opt.delta = det_delta;
            opt.tau = det_tau;
            opt.crop = det_crop;
            opt.graph.include_foreground = det_incl_fg;
            opt.classify.unconditional_crack_rule = det_uncond;
            opt.exec = exec;
            const DetectionReport report = detect(vol, opt);
            if (det_out.empty()) {
                write_report_csv(report, std::cout, det_timings);
            } else {
                std::ostringstream ss;
                write_report_csv(report, ss, det_timings);
                write_text(det_out, ss.str());
            }
            std::fprintf(stderr, "regions=%zu H=%zu I=%zu C=%zu total_ms=%.1f\n", report.regions.size(),
                         report.count(RegionLabel::Homogeneous), report.count(RegionLabel::Inhomogeneous),
                         report.count(RegionLabel::Crack), report.total_ms);
            if (!det_dump.empty()) {
                fs::create_directories(det_dump);
                const BinaryVolume used = crop_volume(vol, report.used_dims);
                for (const auto& spec : partition_domain(used.dims(), det_g)) {
                    const FacetSlice f = select_facet(used, spec);
                    const auto graph = build_graph(f.slice, MeshSize(det_delta), opt.graph);
                    std::ostringstream ss;
                    write_graph_text(graph, ss);
                    write_text(fs::path(det_dump) / ("graph_" + std::to_string(spec.q[0]) + "_" +
                                                     std::to_string(spec.q[1]) + "_" + std::to_string(spec.q[2]) + ".txt"),
                               ss.str());
                }
            }
        } else if (*ev) {
            std::ifstream in(ev_pred);
            if (!in) throw IoError("cannot open report '" + ev_pred + "'");
            const ParsedReport pred = read_report_csv(in);
            std::size_t g = ev_g;
            if (g == 0) {
                if (!pred.g) throw FormatError("report has no summary line; pass --g");
                g = *pred.g;
            } else if (pred.g && *pred.g != g) {
                throw InputError("--g " + std::to_string(g) + " disagrees with report g=" + std::to_string(*pred.g));
            }
            BinaryVolume mask = read_binary_volume(ev_mask);
            if (pred.cropped) mask = crop_volume(mask, crop_dims(mask.dims(), g));
            const auto regions = partition_domain(mask.dims(), g);
            if (regions.size() != pred.labels.size()) {
                throw InputError("report has " + std::to_string(pred.labels.size()) + " regions, mask partition has " +
                                 std::to_string(regions.size()));
            }
            for (std::size_t k = 0; k < regions.size(); ++k) {
                if (regions[k].q != pred.q[k]) throw InputError("report row " + std::to_string(k + 1) + " is out of q order");
            }
            const auto truth = region_truth(mask, regions);
            MetricsRow row;
            row.image = ev_image.empty() ? fs::path(ev_pred).stem().string() : ev_image;
            row.delta = pred.delta.value_or(0);
            row.g = g;
            row.m = metrics(confusion(pred.labels, truth));
            std::vector<MetricsRow> rows{row};
            if (ev_out.empty()) {
                write_metrics_csv(rows, std::cout);
            } else {
                std::ostringstream ss;
                write_metrics_csv(rows, ss);
                write_text(ev_out, ss.str());
            }
        } else if (*ren) {
            const AnyVolume vol = read_volume(ren_in);
            write_pgm(render_slice(vol, parse_axis(ren_axis), ren_index), ren_out);
        } else if (*ben) {
            const auto sides = parse_sizes(ben_sides);
            if (sides.empty()) {
                std::cerr << "bench: --sides needs at least one value\n";
                return 2;
            }
            ben_opts.seed = ben_seed;
            ben_opts.exec = exec;
            const auto rows = run_bench(sides, parse_scales(ben_scales), ben_opts);
            write_bench_table(rows, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
