#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "crackdet/lattice_graph.hpp"
#include "crackdet/parallel.hpp"

namespace crackdet {

enum class RegionLabel : std::uint8_t { Homogeneous, Inhomogeneous, Crack };

/// `H`, `I` or `C`.
[[nodiscard]] char label_code(RegionLabel label) noexcept;
[[nodiscard]] RegionLabel parse_label(char code);

/// Component-size threshold; a region is a crack when some component is strictly larger.
class ComponentThreshold {
public:
    explicit ComponentThreshold(double tau);
    [[nodiscard]] double value() const noexcept { return tau_; }

private:
    double tau_;
};

/// side / delta + 1, the vertex count along one lattice edge.
[[nodiscard]] ComponentThreshold default_tau(std::size_t side, MeshSize delta);

struct ClassifyOptions {
    /// Apply the size rule to every region, not only to those touching the facet boundary.
    bool unconditional_crack_rule = false;
};

/// Homogeneous when no component touches the facet boundary, otherwise crack when the largest
/// component exceeds tau, otherwise inhomogeneous.
[[nodiscard]] RegionLabel classify(std::span<const Component> components, ComponentThreshold tau,
                                   const ClassifyOptions& options = {});

/// Rectangular crack cross-section on a facet, with the miss-probability budget.
struct CrackGeometry {
    double length = 0.0;
    double width = 0.0;
    double epsilon = 0.1;
    double alpha = 0.05;

    [[nodiscard]] double area() const noexcept { return length * width; }
    /// Throws ParameterError unless every field is positive and alpha < 1.
    void validate() const;
};

/// floor(2 sqrt(alpha |C0| / (1 + eps))). Throws ParameterError when the result is below 1.
[[nodiscard]] std::size_t delta_max(const CrackGeometry& geom);

/// delta^2 / 4 * (1 + eps) / |C0|.
[[nodiscard]] double miss_probability_bound(const CrackGeometry& geom, MeshSize delta);

/// True when a length x width rectangle centred at (cx, cy), long axis at angle theta,
/// contains no point of delta Z^2 (closed rectangle).
[[nodiscard]] bool rectangle_misses_lattice(double cx, double cy, double theta, double length, double width,
                                            double delta) noexcept;

struct MissEstimate {
    std::size_t trials = 0;
    std::size_t misses = 0;

    [[nodiscard]] double rate() const noexcept {
        return trials == 0 ? 0.0 : static_cast<double>(misses) / static_cast<double>(trials);
    }
    /// sqrt(p (1 - p) / n) at the observed rate.
    [[nodiscard]] double binomial_sd() const noexcept;
};

/// Monte Carlo over random isometries: angle uniform in [0, pi), centre uniform in one lattice cell.
/// Trial t draws from its own counter-seeded stream, so the result is independent of thread count.
[[nodiscard]] MissEstimate simulate_miss_probability(const CrackGeometry& geom, MeshSize delta,
                                                     std::size_t trials, std::uint64_t seed,
                                                     const Execution& exec = {});

}  // namespace crackdet
