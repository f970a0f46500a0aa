// NumPy arrays are C-ordered (z, y, x), which matches the x-fastest voxel layout.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <sstream>

#include "crackdet/classifier.hpp"
#include "crackdet/evaluation.hpp"
#include "crackdet/hessian.hpp"
#include "crackdet/lattice_graph.hpp"
#include "crackdet/partition.hpp"
#include "crackdet/pipeline.hpp"
#include "crackdet/synthgen.hpp"
#include "crackdet/volume_io.hpp"

namespace py = pybind11;
using namespace crackdet;

namespace {

template <typename T>
using Array = py::array_t<T, py::array::c_style | py::array::forcecast>;

Dims dims_of(const py::array& a) {
    if (a.ndim() != 3) throw InputError("expected a 3D array shaped (z, y, x)");
    return {static_cast<std::size_t>(a.shape(2)), static_cast<std::size_t>(a.shape(1)),
            static_cast<std::size_t>(a.shape(0))};
}

template <typename T>
Raster3D<T> to_raster(const Array<T>& a) {
    const Dims d = dims_of(a);
    std::vector<T> data(a.data(), a.data() + d.count());
    return Raster3D<T>(d, std::move(data));
}

template <typename T>
py::array_t<T> to_numpy(const Raster3D<T>& r) {
    const Dims d = r.dims();
    py::array_t<T> out({d.nz, d.ny, d.nx});
    std::memcpy(out.mutable_data(), r.data().data(), r.size() * sizeof(T));
    return out;
}

BinaryVolume to_binary(const Array<std::uint8_t>& a) {
    BinaryVolume v = to_raster(a);
    for (auto& x : v.data()) x = x != 0;
    return v;
}

Execution exec_of(unsigned threads) { return Execution{threads == 0 ? 1u : threads}; }

py::dict region_dict(const RegionReport& r) {
    py::dict d;
    d["q"] = py::make_tuple(r.q[0], r.q[1], r.q[2]);
    d["facet"] = std::string(facet_name(r.facet));
    d["facet_foreground"] = r.facet_foreground;
    d["label"] = std::string(1, label_code(r.label));
    d["max_component"] = r.max_component;
    d["components"] = r.component_count;
    d["touches_boundary"] = r.touches_boundary;
    return d;
}

std::vector<RegionLabel> parse_labels(const std::string& codes) {
    std::vector<RegionLabel> out;
    for (char c : codes) out.push_back(parse_label(c));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Crack pre-detection in 3D volumes: Hessian filtering, facet lattice graphs, DFS classification";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def(
        "hessian_entry",
        [](const Array<float>& vol, int i, int j, double sigma, unsigned threads) {
            return to_numpy(hessian_entry(to_raster(vol), i, j, ScaleParameter(sigma), exec_of(threads)));
        },
        py::arg("volume"), py::arg("i"), py::arg("j"), py::arg("sigma"), py::arg("threads") = 1,
        "sigma * (I * d2G/dp_i dp_j) with mirror boundaries; axes 0 = x, 1 = y, 2 = z.");

    m.def(
        "max_entry_response",
        [](const Array<float>& vol, double sigma, unsigned threads) {
            return to_numpy(max_entry_response(to_raster(vol), ScaleParameter(sigma), exec_of(threads)));
        },
        py::arg("volume"), py::arg("sigma"), py::arg("threads") = 1);

    m.def(
        "multiscale_filter",
        [](const Array<float>& vol, std::vector<double> scales, unsigned threads) {
            const GrayVolume g = to_raster(vol);
            check_gray_range(g);
            return to_numpy(multiscale_filter(g, ScaleSet(std::move(scales)), exec_of(threads)));
        },
        py::arg("volume"), py::arg("scales") = std::vector<double>{1.0, 3.0, 5.0, 10.0}, py::arg("threads") = 1,
        "Binary segmentation: OR over scales of the thresholded maximal Hessian entry.");

    m.def(
        "connected_components",
        [](const Array<std::uint8_t>& slice, std::size_t delta, bool include_foreground) {
            if (slice.ndim() != 2) throw InputError("expected a 2D array shaped (v, u)");
            const auto h = static_cast<std::size_t>(slice.shape(0));
            const auto w = static_cast<std::size_t>(slice.shape(1));
            BinarySlice s(w, h, 0);
            const std::uint8_t* src = slice.data();
            for (std::size_t v = 0; v < h; ++v)
                for (std::size_t u = 0; u < w; ++u) s(u, v) = src[v * w + u] != 0;
            GraphOptions opt;
            opt.include_foreground = include_foreground;
            const auto graph = build_graph(s, MeshSize(delta), opt);
            py::list out;
            for (const auto& c : connected_components(graph)) {
                py::array_t<std::int64_t> pts({static_cast<py::ssize_t>(c.size()), py::ssize_t{2}});
                auto p = pts.mutable_unchecked<2>();
                for (std::size_t k = 0; k < c.size(); ++k) {
                    p(k, 0) = static_cast<std::int64_t>(c.vertices[k].i * delta);
                    p(k, 1) = static_cast<std::int64_t>(c.vertices[k].j * delta);
                }
                py::dict d;
                d["vertices"] = pts;
                d["touches_boundary"] = c.touches_boundary;
                out.append(d);
            }
            return out;
        },
        py::arg("slice"), py::arg("delta"), py::arg("include_foreground") = false,
        "Components of the halo graph on a 2D binary slice; vertices are (u, v) pixel coordinates.");

    m.def(
        "detect",
        [](const Array<std::uint8_t>& vol, std::size_t g, std::size_t delta, std::optional<double> tau, bool crop,
           bool include_foreground, bool unconditional_crack_rule, unsigned threads) {
            DetectOptions opt;
            opt.g = g;
            opt.delta = delta;
            opt.tau = tau;
            opt.crop = crop;
            opt.graph.include_foreground = include_foreground;
            opt.classify.unconditional_crack_rule = unconditional_crack_rule;
            opt.exec = exec_of(threads);
            const DetectionReport report = detect(to_binary(vol), opt);
            py::list regions;
            for (const auto& r : report.regions) regions.append(region_dict(r));
            std::ostringstream csv;
            write_report_csv(report, csv);
            py::dict out;
            out["g"] = report.g;
            out["delta"] = report.delta;
            out["tau"] = report.tau;
            out["side"] = report.side;
            out["regions"] = regions;
            out["csv"] = csv.str();
            return out;
        },
        py::arg("volume"), py::arg("g") = 5, py::arg("delta") = 2, py::arg("tau") = py::none(),
        py::arg("crop") = false, py::arg("include_foreground") = false, py::arg("unconditional_crack_rule") = false,
        py::arg("threads") = 1);

    m.def(
        "delta_max",
        [](double area, double alpha, double epsilon) { return delta_max({area, 1.0, epsilon, alpha}); },
        py::arg("area"), py::arg("alpha") = 0.05, py::arg("epsilon") = 0.1);

    m.def(
        "simulate_miss_probability",
        [](double length, double width, std::size_t delta, std::size_t trials, std::uint64_t seed, unsigned threads) {
            const CrackGeometry geom{length, width, 0.1, 0.05};
            const auto est = simulate_miss_probability(geom, MeshSize(delta), trials, seed, exec_of(threads));
            return py::make_tuple(est.rate(), est.binomial_sd());
        },
        py::arg("length"), py::arg("width"), py::arg("delta"), py::arg("trials") = 100000, py::arg("seed") = 1,
        py::arg("threads") = 1, "Returns (miss rate, binomial sd) over random placements.");

    m.def(
        "region_metrics",
        [](const std::string& labels, const std::vector<bool>& truth) {
            const auto m = metrics(confusion(parse_labels(labels), truth));
            py::dict d;
            d["precision"] = m.precision;
            d["recall"] = m.recall;
            d["f1"] = m.f1;
            return d;
        },
        py::arg("labels"), py::arg("truth"), "Labels as a string of H/I/C codes in q order.");

    m.def(
        "region_truth",
        [](const Array<std::uint8_t>& mask, std::size_t g) {
            const BinaryVolume b = to_binary(mask);
            return region_truth(b, partition_domain(b.dims(), g));
        },
        py::arg("mask"), py::arg("g"));

    m.def(
        "generate_scene",
        [](const std::string& config_text, std::optional<std::uint64_t> seed) {
            SceneConfig cfg = parse_scene_config(config_text);
            if (seed) cfg.seed = *seed;
            const Scene s = generate(cfg);
            return py::make_tuple(to_numpy(s.volume), to_numpy(s.truth.crack_mask));
        },
        py::arg("config"), py::arg("seed") = py::none(), "Returns (gray volume, crack mask) from config text.");

    m.def(
        "reference_scene_config", [](std::size_t side, std::uint64_t seed) {
            return format_scene_config(reference_scene(side, seed));
        },
        py::arg("side"), py::arg("seed"));

    m.def(
        "read_volume",
        [](const std::filesystem::path& path) -> py::object {
            const AnyVolume v = read_volume(path);
            if (const auto* g = std::get_if<GrayVolume>(&v)) return to_numpy(*g);
            return to_numpy(std::get<BinaryVolume>(v));
        },
        py::arg("path"), "float32 for gray payloads, uint8 0/1 for bit payloads.");

    m.def(
        "write_volume",
        [](const py::array& vol, const std::filesystem::path& path) {
            if (py::isinstance<py::array_t<std::uint8_t>>(vol) || py::isinstance<py::array_t<bool>>(vol)) {
                write_volume(to_binary(vol.cast<Array<std::uint8_t>>()), path);
            } else {
                write_volume(to_raster(vol.cast<Array<float>>()), path, ValueKind::F32);
            }
        },
        py::arg("volume"), py::arg("path"), "uint8/bool arrays are written as bit volumes, others as f32.");
}
