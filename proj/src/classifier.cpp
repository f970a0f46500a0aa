#include "crackdet/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace crackdet {

char label_code(RegionLabel label) noexcept {
    switch (label) {
        case RegionLabel::Homogeneous: return 'H';
        case RegionLabel::Inhomogeneous: return 'I';
        case RegionLabel::Crack: return 'C';
    }
    return '?';
}

RegionLabel parse_label(char code) {
    switch (code) {
        case 'H': return RegionLabel::Homogeneous;
        case 'I': return RegionLabel::Inhomogeneous;
        case 'C': return RegionLabel::Crack;
        default: throw FormatError(std::string("unknown region label '") + code + "'");
    }
}

ComponentThreshold::ComponentThreshold(double tau) : tau_(tau) {
    if (!(tau > 0.0)) throw ParameterError("component threshold tau must be positive");
}

ComponentThreshold default_tau(std::size_t side, MeshSize delta) {
    if (side == 0) throw ParameterError("subregion side must be >= 1");
    return ComponentThreshold(static_cast<double>(side) / static_cast<double>(delta.value()) + 1.0);
}

RegionLabel classify(std::span<const Component> components, ComponentThreshold tau, const ClassifyOptions& options) {
    bool touches = false;
    std::size_t largest = 0;
    for (const auto& c : components) {
        touches = touches || c.touches_boundary;
        largest = std::max(largest, c.size());
    }
    const bool large = static_cast<double>(largest) > tau.value();
    if (options.unconditional_crack_rule) {
        if (large) return RegionLabel::Crack;
        return touches ? RegionLabel::Inhomogeneous : RegionLabel::Homogeneous;
    }
    if (!touches) return RegionLabel::Homogeneous;
    return large ? RegionLabel::Crack : RegionLabel::Inhomogeneous;
}

void CrackGeometry::validate() const {
    if (!(length > 0.0) || !(width > 0.0)) throw ParameterError("crack length and width must be positive");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
}

std::size_t delta_max(const CrackGeometry& geom) {
    geom.validate();
    const double ratio = geom.alpha * geom.area() / (1.0 + geom.epsilon);
    const double d = std::floor(2.0 * std::sqrt(ratio));
    if (d < 1.0) {
        throw ParameterError("no feasible mesh size: alpha*|C0|/(1+eps) = " + std::to_string(ratio) +
                             " < 1/4; increase alpha or the crack area");
    }
    return static_cast<std::size_t>(d);
}

double miss_probability_bound(const CrackGeometry& geom, MeshSize delta) {
    const auto d = static_cast<double>(delta.value());
    return d * d / 4.0 * (1.0 + geom.epsilon) / geom.area();
}

bool rectangle_misses_lattice(double cx, double cy, double theta, double length, double width,
                              double delta) noexcept {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double hl = 0.5 * length;
    const double hw = 0.5 * width;
    const double ex = std::abs(c) * hl + std::abs(s) * hw;
    const double ey = std::abs(s) * hl + std::abs(c) * hw;
    const auto kx0 = static_cast<long long>(std::ceil((cx - ex) / delta));
    const auto kx1 = static_cast<long long>(std::floor((cx + ex) / delta));
    const auto ky0 = static_cast<long long>(std::ceil((cy - ey) / delta));
    const auto ky1 = static_cast<long long>(std::floor((cy + ey) / delta));
    for (long long ky = ky0; ky <= ky1; ++ky) {
        const double dy = static_cast<double>(ky) * delta - cy;
        for (long long kx = kx0; kx <= kx1; ++kx) {
            const double dx = static_cast<double>(kx) * delta - cx;
            const double along = dx * c + dy * s;
            const double across = -dx * s + dy * c;
            if (std::abs(along) <= hl && std::abs(across) <= hw) return false;
        }
    }
    return true;
}

double MissEstimate::binomial_sd() const noexcept {
    if (trials == 0) return 0.0;
    const double p = rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_uniform(std::uint64_t& state) noexcept {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

MissEstimate simulate_miss_probability(const CrackGeometry& geom, MeshSize delta, std::size_t trials,
                                       std::uint64_t seed, const Execution& exec) {
    if (!(geom.length > 0.0) || !(geom.width > 0.0)) throw ParameterError("crack length and width must be positive");
    if (trials == 0) throw ParameterError("trials must be >= 1");
    const auto d = static_cast<double>(delta.value());
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (trials + kBlock - 1) / kBlock;
    std::vector<std::size_t> misses(blocks, 0);
    parallel_for(blocks, exec, [&](std::size_t b) {
        std::size_t m = 0;
        const std::size_t end = std::min(trials, (b + 1) * kBlock);
        for (std::size_t t = b * kBlock; t < end; ++t) {
            std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (static_cast<std::uint64_t>(t) + 1));
            splitmix64(state);
            const double theta = std::numbers::pi * unit_uniform(state);
            const double cx = d * unit_uniform(state);
            const double cy = d * unit_uniform(state);
            if (rectangle_misses_lattice(cx, cy, theta, geom.length, geom.width, d)) ++m;
        }
        misses[b] = m;
    });
    MissEstimate est;
    est.trials = trials;
    for (std::size_t m : misses) est.misses += m;
    return est;
}

}  // namespace crackdet
