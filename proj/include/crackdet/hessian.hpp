#pragma once

#include <span>
#include <vector>

#include "crackdet/parallel.hpp"
#include "crackdet/volume.hpp"

namespace crackdet {

/// Gaussian scale in voxel units.
class ScaleParameter {
public:
    /// Throws ParameterError unless sigma > 0.
    explicit ScaleParameter(double sigma);
    [[nodiscard]] double sigma() const noexcept { return sigma_; }
    friend bool operator==(const ScaleParameter&, const ScaleParameter&) = default;
    friend auto operator<=>(const ScaleParameter&, const ScaleParameter&) = default;

private:
    double sigma_;
};

/// Non-empty, strictly increasing list of scales.
class ScaleSet {
public:
    explicit ScaleSet(std::vector<double> sigmas);
    [[nodiscard]] std::span<const ScaleParameter> scales() const noexcept { return scales_; }
    [[nodiscard]] std::size_t size() const noexcept { return scales_.size(); }

private:
    std::vector<ScaleParameter> scales_;
};

/// Order-0/1/2 derivative of the 1D Gaussian density with standard deviation sigma, at x.
[[nodiscard]] double gaussian_derivative(double x, double sigma, int order) noexcept;

/// Sampled 1D Gaussian derivative, taps at offsets -radius..radius.
struct DerivativeKernel1D {
    int radius = 0;
    int order = 0;
    std::vector<double> taps;

    [[nodiscard]] double tap(int offset) const noexcept { return taps[static_cast<std::size_t>(offset + radius)]; }
};

/// Samples the order-0/1/2 Gaussian derivative at integer offsets, radius ceil(4 sigma).
/// Order 0 is rescaled to unit sum, order 1 is exactly antisymmetric, order 2 is mean-subtracted.
[[nodiscard]] DerivativeKernel1D make_kernel(ScaleParameter sigma, int order);

/// Reflect-without-repeat index into [0, n): -1 -> 1, n -> n - 2, periodic beyond that.
[[nodiscard]] std::size_t mirror_index(long long i, std::size_t n) noexcept;

/// sigma * (I * d²G/dp_i dp_j) via separable passes (z, then y, then x) with mirror boundaries.
/// Axes are 0 = x, 1 = y, 2 = z. hessian_entry(v, i, j) and (v, j, i) are bit-identical.
[[nodiscard]] RealField hessian_entry(const GrayVolume& vol, int i, int j, ScaleParameter sigma,
                                      const Execution& exec = {});

/// Voxelwise max over the six distinct Hessian entries and 0.
[[nodiscard]] RealField max_entry_response(const GrayVolume& vol, ScaleParameter sigma,
                                           const Execution& exec = {});

struct FieldStats {
    double mean = 0.0;
    double sd = 0.0;  ///< sample standard deviation, n - 1 denominator
};

/// Fixed-order (per z-plane partial sums) mean and sample sd.
[[nodiscard]] FieldStats field_stats(const RealField& field, const Execution& exec = {});

/// 1 where value >= mean + 3 sd; all zero when sd == 0.
[[nodiscard]] BinaryVolume binarize_scale(const RealField& field, const Execution& exec = {});

struct ScaleTiming {
    double sigma = 0.0;
    double milliseconds = 0.0;
    std::size_t foreground = 0;
};

struct FilterResult {
    BinaryVolume combined;
    std::vector<ScaleTiming> per_scale;
};

/// Voxelwise OR over scales of binarize_scale(max_entry_response(vol, sigma)).
[[nodiscard]] BinaryVolume multiscale_filter(const GrayVolume& vol, const ScaleSet& scales,
                                             const Execution& exec = {});
/// Same as multiscale_filter, with per-scale timing and foreground counts.
[[nodiscard]] FilterResult run_multiscale_filter(const GrayVolume& vol, const ScaleSet& scales,
                                                 const Execution& exec = {});

}  // namespace crackdet
