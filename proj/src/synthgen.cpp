#include "crackdet/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace crackdet {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 normalized(const Vec3& v) {
    const double n = std::sqrt(dot(v, v));
    return {v[0] / n, v[1] / n, v[2] / n};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Largest roughness amplitude keeping the local slab thickness >= width / 2.
double max_roughness(double period) { return std::sqrt(3.0) * period / (2.0 * std::numbers::pi * std::sqrt(2.0)); }

struct PreparedCrack {
    Vec3 n, e1, e2, p0;
    double half_width;
    double amplitude;
    double wave;  // 2 pi / period
    double gray;

    explicit PreparedCrack(const CrackSpec& c) : p0(c.point), half_width(0.5 * c.width), amplitude(c.roughness_amplitude),
                                                 wave(2.0 * std::numbers::pi / c.roughness_period), gray(c.gray) {
        n = normalized(c.normal);
        const Vec3 helper = std::abs(n[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
        e1 = normalized(cross(n, helper));
        e2 = cross(n, e1);
    }

    [[nodiscard]] bool contains(const Vec3& p) const {
        const Vec3 r{p[0] - p0[0], p[1] - p0[1], p[2] - p0[2]};
        double dist = dot(r, n);
        if (amplitude != 0.0) dist -= amplitude * std::sin(wave * dot(r, e1)) * std::sin(wave * dot(r, e2));
        return std::abs(dist) <= half_width;
    }
};

}  // namespace

void SceneConfig::validate() const {
    if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) throw ParameterError("scene dims must all be >= 1");
    if (!(material > 0.0 && material < 1.0)) throw ParameterError("material gray level must lie in (0, 1)");
    if (!(noise_sd >= 0.0)) throw ParameterError("noise_sd must be >= 0");
    for (std::size_t k = 0; k < cracks.size(); ++k) {
        const auto& c = cracks[k];
        const std::string tag = "crack " + std::to_string(k + 1) + ": ";
        if (!(dot(c.normal, c.normal) > 0.0)) throw ParameterError(tag + "normal must be non-zero");
        if (!(c.width > 0.0)) throw ParameterError(tag + "width must be positive");
        if (!(c.gray >= 0.0 && c.gray < material)) throw ParameterError(tag + "gray level must be in [0, material)");
        if (c.roughness_amplitude < 0.0) throw ParameterError(tag + "roughness amplitude must be >= 0");
        if (c.roughness_amplitude > 0.0) {
            if (!(c.roughness_period > 0.0)) throw ParameterError(tag + "roughness period must be positive");
            if (c.roughness_amplitude > max_roughness(c.roughness_period)) {
                throw ParameterError(tag + "roughness amplitude exceeds " +
                                     std::to_string(max_roughness(c.roughness_period)) + " for period " +
                                     std::to_string(c.roughness_period));
            }
        }
    }
    if (!(pores.intensity >= 0.0)) throw ParameterError("pore intensity must be >= 0");
    if (pores.intensity > 0.0) {
        if (!(pores.r_min > 0.0) || pores.r_max < pores.r_min) {
            throw ParameterError("pore radii must satisfy 0 < r_min <= r_max");
        }
        if (!(pores.gray >= 0.0 && pores.gray < material)) throw ParameterError("pore gray must be in [0, material)");
    }
}

Scene generate(const SceneConfig& config) {
    config.validate();
    const Dims d = config.dims;
    std::mt19937_64 rng(config.seed);
    Scene scene{GrayVolume(d, static_cast<float>(config.material)), GroundTruth{BinaryVolume(d, 0), 0}};
    std::vector<double> values(d.count(), config.material);
    if (config.noise_sd > 0.0) {
        std::normal_distribution<double> noise(0.0, config.noise_sd);
        for (double& v : values) v += noise(rng);
    }

    if (config.pores.intensity > 0.0) {
        std::poisson_distribution<std::size_t> count(config.pores.intensity * static_cast<double>(d.count()));
        const std::size_t n = count(rng);
        scene.truth.pore_count = n;
        std::uniform_real_distribution<double> ux(0.0, static_cast<double>(d.nx));
        std::uniform_real_distribution<double> uy(0.0, static_cast<double>(d.ny));
        std::uniform_real_distribution<double> uz(0.0, static_cast<double>(d.nz));
        std::uniform_real_distribution<double> ur(config.pores.r_min, config.pores.r_max);
        for (std::size_t k = 0; k < n; ++k) {
            const double cx = ux(rng), cy = uy(rng), cz = uz(rng), r = ur(rng);
            auto lo = [](double c, double rr) { return static_cast<std::size_t>(std::max(0.0, std::ceil(c - rr))); };
            auto hi = [](double c, double rr, std::size_t n_axis) {
                return static_cast<std::size_t>(std::min(static_cast<double>(n_axis) - 1.0, std::floor(c + rr)));
            };
            const double r2 = r * r;
            for (std::size_t z = lo(cz, r); z <= hi(cz, r, d.nz); ++z)
                for (std::size_t y = lo(cy, r); y <= hi(cy, r, d.ny); ++y)
                    for (std::size_t x = lo(cx, r); x <= hi(cx, r, d.nx); ++x) {
                        const double dx = x - cx, dy = y - cy, dz = z - cz;
                        if (dx * dx + dy * dy + dz * dz <= r2) values[linear_index(d, x, y, z)] = config.pores.gray;
                    }
        }
    }

    std::vector<PreparedCrack> cracks(config.cracks.begin(), config.cracks.end());
    auto mask = scene.truth.crack_mask.data();
    if (!cracks.empty()) {
        for (std::size_t z = 0; z < d.nz; ++z)
            for (std::size_t y = 0; y < d.ny; ++y)
                for (std::size_t x = 0; x < d.nx; ++x) {
                    const Vec3 p{static_cast<double>(x), static_cast<double>(y), static_cast<double>(z)};
                    for (const auto& c : cracks) {
                        if (c.contains(p)) {
                            const std::size_t i = linear_index(d, x, y, z);
                            values[i] = c.gray;
                            mask[i] = 1;
                        }
                    }
                }
    }

    auto out = scene.volume.data();
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = static_cast<float>(std::clamp(values[i], 0.0, 1.0));
    return scene;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<double> parse_numbers(const std::string& value, int lineno, const std::string& key) {
    std::istringstream in(value);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) {
            throw FormatError("line " + std::to_string(lineno) + ": '" + key + "' expects numbers, got '" + tok + "'");
        }
        out.push_back(v);
    }
    return out;
}

void expect_count(const std::vector<double>& v, std::size_t lo, std::size_t hi, int lineno, const std::string& key) {
    if (v.size() < lo || v.size() > hi) {
        throw FormatError("line " + std::to_string(lineno) + ": '" + key + "' expects " + std::to_string(lo) +
                          (hi != lo ? "-" + std::to_string(hi) : std::string()) + " values, got " +
                          std::to_string(v.size()));
    }
}

}  // namespace

SceneConfig parse_scene_config(std::string_view text) {
    SceneConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw FormatError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key == "seed") {
            std::size_t used = 0;
            unsigned long long s = 0;
            try {
                s = std::stoull(value, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != value.size() || value.front() == '-') {
                throw FormatError("line " + std::to_string(lineno) + ": 'seed' expects an unsigned integer");
            }
            cfg.seed = s;
            continue;
        }
        const auto v = parse_numbers(value, lineno, key);
        if (key == "dims") {
            expect_count(v, 3, 3, lineno, key);
            for (double x : v) {
                if (x < 1 || x != std::floor(x)) {
                    throw FormatError("line " + std::to_string(lineno) + ": 'dims' expects positive integers");
                }
            }
            cfg.dims = {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]), static_cast<std::size_t>(v[2])};
        } else if (key == "material") {
            expect_count(v, 1, 1, lineno, key);
            cfg.material = v[0];
        } else if (key == "noise_sd") {
            expect_count(v, 1, 1, lineno, key);
            cfg.noise_sd = v[0];
        } else if (key == "pore_intensity") {
            expect_count(v, 1, 1, lineno, key);
            cfg.pores.intensity = v[0];
        } else if (key == "pore_radius") {
            expect_count(v, 2, 2, lineno, key);
            cfg.pores.r_min = v[0];
            cfg.pores.r_max = v[1];
        } else if (key == "pore_gray") {
            expect_count(v, 1, 1, lineno, key);
            cfg.pores.gray = v[0];
        } else if (key == "crack") {
            expect_count(v, 8, 10, lineno, key);
            if (v.size() == 9) {
                throw FormatError("line " + std::to_string(lineno) + ": roughness needs both amplitude and period");
            }
            CrackSpec c;
            c.normal = {v[0], v[1], v[2]};
            c.point = {v[3], v[4], v[5]};
            c.width = v[6];
            c.gray = v[7];
            if (v.size() == 10) {
                c.roughness_amplitude = v[8];
                c.roughness_period = v[9];
            }
            cfg.cracks.push_back(c);
        } else {
            throw FormatError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

SceneConfig read_scene_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scene config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scene_config(ss.str());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string format_scene_config(const SceneConfig& c) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << "dims = " << c.dims.nx << ' ' << c.dims.ny << ' ' << c.dims.nz << '\n';
    out << "material = " << c.material << '\n';
    out << "noise_sd = " << c.noise_sd << '\n';
    out << "seed = " << c.seed << '\n';
    out << "pore_intensity = " << c.pores.intensity << '\n';
    out << "pore_radius = " << c.pores.r_min << ' ' << c.pores.r_max << '\n';
    out << "pore_gray = " << c.pores.gray << '\n';
    for (const auto& k : c.cracks) {
        out << "crack = " << k.normal[0] << ' ' << k.normal[1] << ' ' << k.normal[2] << ' ' << k.point[0] << ' '
            << k.point[1] << ' ' << k.point[2] << ' ' << k.width << ' ' << k.gray;
        if (k.roughness_amplitude > 0.0) out << ' ' << k.roughness_amplitude << ' ' << k.roughness_period;
        out << '\n';
    }
    return out.str();
}

std::vector<bool> region_truth(const BinaryVolume& mask, std::span<const SubregionSpec> regions) {
    std::vector<bool> out;
    out.reserve(regions.size());
    const Dims& d = mask.dims();
    for (const auto& r : regions) {
        const auto& o = r.box.origin;
        for (int a = 0; a < 3; ++a) {
            if (o[a] + r.box.side > d[a]) throw DomainError("region box exceeds the mask domain");
        }
        bool any = false;
        for (std::size_t z = o[2]; z < o[2] + r.box.side && !any; ++z)
            for (std::size_t y = o[1]; y < o[1] + r.box.side && !any; ++y)
                for (std::size_t x = o[0]; x < o[0] + r.box.side && !any; ++x) any = mask(x, y, z) != 0;
        out.push_back(any);
    }
    return out;
}

SceneConfig reference_scene(std::size_t side, std::uint64_t seed) {
    SceneConfig cfg;
    cfg.dims = {side, side, side};
    cfg.material = 0.75;
    cfg.noise_sd = 0.05;
    cfg.seed = seed;
    const double s = static_cast<double>(side);
    cfg.pores.intensity = 200.0 / (250.0 * 250.0 * 250.0);
    cfg.pores.r_min = 2.0;
    cfg.pores.r_max = 6.0;
    cfg.pores.gray = 0.25;

    std::mt19937_64 rng(seed ^ 0x5eedc4acULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> centre(s / 3.0, 2.0 * s / 3.0);
    CrackSpec c;
    Vec3 n{};
    do {
        n = {gauss(rng), gauss(rng), gauss(rng)};
    } while (dot(n, n) < 1e-6);
    c.normal = normalized(n);
    c.point = {centre(rng), centre(rng), centre(rng)};
    c.width = 3.0;
    c.gray = 0.25;
    cfg.cracks.push_back(c);
    return cfg;
}

}  // namespace crackdet
