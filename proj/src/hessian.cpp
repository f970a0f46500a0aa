#include "crackdet/hessian.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

namespace crackdet {

ScaleParameter::ScaleParameter(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("scale sigma must be a positive finite number, got " + std::to_string(sigma));
    }
}

ScaleSet::ScaleSet(std::vector<double> sigmas) {
    if (sigmas.empty()) throw ParameterError("scale set must not be empty");
    scales_.reserve(sigmas.size());
    for (double s : sigmas) {
        ScaleParameter p(s);
        if (!scales_.empty() && !(scales_.back() < p)) {
            throw ParameterError("scale set must be strictly increasing");
        }
        scales_.push_back(p);
    }
}

double gaussian_derivative(double x, double sigma, int order) noexcept {
    const double s2 = sigma * sigma;
    const double g = std::exp(-x * x / (2.0 * s2)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    if (order == 1) return -x / s2 * g;
    if (order == 2) return (x * x / (s2 * s2) - 1.0 / s2) * g;
    return g;
}

DerivativeKernel1D make_kernel(ScaleParameter scale, int order) {
    if (order < 0 || order > 2) throw ParameterError("derivative order must be 0, 1 or 2");
    const double s = scale.sigma();
    DerivativeKernel1D k;
    k.order = order;
    k.radius = static_cast<int>(std::ceil(4.0 * s));
    k.taps.resize(static_cast<std::size_t>(2 * k.radius + 1));
    for (int x = 0; x <= k.radius; ++x) {
        const double value = gaussian_derivative(static_cast<double>(x), s, order);
        k.taps[static_cast<std::size_t>(k.radius + x)] = value;
        k.taps[static_cast<std::size_t>(k.radius - x)] = order == 1 ? -value : value;
    }
    if (order == 0) {
        double sum = 0.0;
        for (double t : k.taps) sum += t;
        for (double& t : k.taps) t /= sum;
    } else if (order == 2) {
        double sum = 0.0;
        for (double t : k.taps) sum += t;
        const double mean = sum / static_cast<double>(k.taps.size());
        for (double& t : k.taps) t -= mean;
    }
    return k;
}

std::size_t mirror_index(long long i, std::size_t n) noexcept {
    if (n <= 1) return 0;
    const long long period = 2 * (static_cast<long long>(n) - 1);
    long long m = i % period;
    if (m < 0) m += period;
    if (m >= static_cast<long long>(n)) m = period - m;
    return static_cast<std::size_t>(m);
}

namespace {

// Symmetric kernels are folded as t0 c + sum t_k (p_k + m_k); derivative kernels use
// neighbour differences so constant lines map to exact zeros.
template <typename T, typename RowAt>
void combine(const DerivativeKernel1D& kernel, RowAt at, double* out, std::size_t len) {
    const int r = kernel.radius;
    switch (kernel.order) {
        case 0: {
            const T* c = at(0);
            const double t0 = kernel.tap(0);
            for (std::size_t x = 0; x < len; ++x) out[x] = t0 * static_cast<double>(c[x]);
            for (int k = 1; k <= r; ++k) {
                const double t = kernel.tap(k);
                const T* p = at(k);
                const T* m = at(-k);
                for (std::size_t x = 0; x < len; ++x) {
                    out[x] += t * (static_cast<double>(p[x]) + static_cast<double>(m[x]));
                }
            }
            break;
        }
        case 1: {
            std::fill(out, out + len, 0.0);
            for (int k = 1; k <= r; ++k) {
                const double t = kernel.tap(k);
                const T* p = at(k);
                const T* m = at(-k);
                for (std::size_t x = 0; x < len; ++x) {
                    out[x] += t * (static_cast<double>(m[x]) - static_cast<double>(p[x]));
                }
            }
            break;
        }
        default: {
            const T* c = at(0);
            std::fill(out, out + len, 0.0);
            for (int k = 1; k <= r; ++k) {
                const double t = kernel.tap(k);
                const T* p = at(k);
                const T* m = at(-k);
                for (std::size_t x = 0; x < len; ++x) {
                    out[x] += t * ((static_cast<double>(p[x]) + static_cast<double>(m[x])) -
                                   2.0 * static_cast<double>(c[x]));
                }
            }
            break;
        }
    }
}

// Convolution along y (axis 1) or z (axis 2), row by row so that every inner loop is contiguous.
template <typename T>
RealField convolve_rows(const Raster3D<T>& in, int axis, const DerivativeKernel1D& kernel, const Execution& exec) {
    const Dims d = in.dims();
    RealField out(d);
    const T* src = in.data().data();
    double* dst = out.data().data();
    const std::size_t n = d[axis];
    const std::size_t stride = axis == 1 ? d.nx : d.nx * d.ny;
    const std::size_t outer = axis == 1 ? d.nz : d.ny;
    const std::size_t outer_stride = axis == 1 ? d.nx * d.ny : d.nx;
    parallel_for(outer, exec, [&](std::size_t o) {
        const std::size_t base = o * outer_stride;
        for (std::size_t i = 0; i < n; ++i) {
            auto at = [&](int off) {
                return src + base + mirror_index(static_cast<long long>(i) + off, n) * stride;
            };
            combine<T>(kernel, at, dst + base + i * stride, d.nx);
        }
    });
    return out;
}

// Convolution along x. `sink(linear_row_start, row)` receives each finished row.
template <typename T, typename Sink>
void convolve_x(const Raster3D<T>& in, const DerivativeKernel1D& kernel, const Execution& exec, Sink sink) {
    const Dims d = in.dims();
    const T* src = in.data().data();
    const int r = kernel.radius;
    const std::size_t rows = d.ny * d.nz;
    const std::size_t block = 64;
    const std::size_t blocks = (rows + block - 1) / block;
    parallel_for(blocks, exec, [&](std::size_t b) {
        std::vector<double> padded(d.nx + 2 * static_cast<std::size_t>(r));
        std::vector<double> row(d.nx);
        const std::size_t end = std::min(rows, (b + 1) * block);
        for (std::size_t rr = b * block; rr < end; ++rr) {
            const T* line = src + rr * d.nx;
            for (std::size_t j = 0; j < padded.size(); ++j) {
                padded[j] = static_cast<double>(
                    line[mirror_index(static_cast<long long>(j) - r, d.nx)]);
            }
            auto at = [&](int off) { return padded.data() + r + off; };
            combine<double>(kernel, at, row.data(), d.nx);
            sink(rr * d.nx, std::span<const double>(row));
        }
    });
}

struct ScaleKernels {
    std::array<DerivativeKernel1D, 3> by_order;
    explicit ScaleKernels(ScaleParameter s)
        : by_order{make_kernel(s, 0), make_kernel(s, 1), make_kernel(s, 2)} {}
};

}  // namespace

RealField hessian_entry(const GrayVolume& vol, int i, int j, ScaleParameter sigma, const Execution& exec) {
    if (i < 0 || i > 2 || j < 0 || j > 2) throw ParameterError("Hessian axes must be 0, 1 or 2");
    std::array<int, 3> orders{0, 0, 0};
    ++orders[static_cast<std::size_t>(i)];
    ++orders[static_cast<std::size_t>(j)];
    const ScaleKernels k(sigma);
    const RealField z = convolve_rows(vol, 2, k.by_order[static_cast<std::size_t>(orders[2])], exec);
    const RealField y = convolve_rows(z, 1, k.by_order[static_cast<std::size_t>(orders[1])], exec);
    RealField out(vol.dims());
    double* dst = out.data().data();
    const double s = sigma.sigma();
    convolve_x(y, k.by_order[static_cast<std::size_t>(orders[0])], exec,
               [&](std::size_t start, std::span<const double> row) {
                   for (std::size_t x = 0; x < row.size(); ++x) dst[start + x] = s * row[x];
               });
    return out;
}

RealField max_entry_response(const GrayVolume& vol, ScaleParameter sigma, const Execution& exec) {
    const ScaleKernels k(sigma);
    RealField response(vol.dims(), 0.0);
    double* dst = response.data().data();
    const double s = sigma.sigma();
    auto fold = [&](std::size_t start, std::span<const double> row) {
        for (std::size_t x = 0; x < row.size(); ++x) dst[start + x] = std::max(dst[start + x], s * row[x]);
    };
    // Entries grouped by their z order so each z pass is computed once:
    // (x, y, z) orders: zz=(0,0,2); xz=(1,0,1), yz=(0,1,1); xx=(2,0,0), yy=(0,2,0), xy=(1,1,0).
    struct Entry {
        int ox, oy;
    };
    const std::array<std::vector<Entry>, 3> by_z = {
        std::vector<Entry>{{2, 0}, {0, 2}, {1, 1}},
        std::vector<Entry>{{1, 0}, {0, 1}},
        std::vector<Entry>{{0, 0}},
    };
    for (int oz = 2; oz >= 0; --oz) {
        const RealField z = convolve_rows(vol, 2, k.by_order[static_cast<std::size_t>(oz)], exec);
        for (const Entry& e : by_z[static_cast<std::size_t>(oz)]) {
            const RealField y = convolve_rows(z, 1, k.by_order[static_cast<std::size_t>(e.oy)], exec);
            convolve_x(y, k.by_order[static_cast<std::size_t>(e.ox)], exec, fold);
        }
    }
    return response;
}

FieldStats field_stats(const RealField& field, const Execution& exec) {
    const Dims d = field.dims();
    const std::size_t plane = d.nx * d.ny;
    const double* src = field.data().data();
    std::vector<double> partial(d.nz, 0.0);
    parallel_for(d.nz, exec, [&](std::size_t z) {
        double s = 0.0;
        for (std::size_t i = 0; i < plane; ++i) s += src[z * plane + i];
        partial[z] = s;
    });
    double sum = 0.0;
    for (double p : partial) sum += p;
    const auto n = static_cast<double>(field.size());
    FieldStats st;
    st.mean = field.size() > 0 ? sum / n : 0.0;
    parallel_for(d.nz, exec, [&](std::size_t z) {
        double s = 0.0;
        for (std::size_t i = 0; i < plane; ++i) {
            const double dv = src[z * plane + i] - st.mean;
            s += dv * dv;
        }
        partial[z] = s;
    });
    double ss = 0.0;
    for (double p : partial) ss += p;
    st.sd = field.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return st;
}

BinaryVolume binarize_scale(const RealField& field, const Execution& exec) {
    BinaryVolume out(field.dims(), 0);
    const FieldStats st = field_stats(field, exec);
    if (st.sd == 0.0) return out;
    const double threshold = st.mean + 3.0 * st.sd;
    const Dims d = field.dims();
    const std::size_t plane = d.nx * d.ny;
    const double* src = field.data().data();
    std::uint8_t* dst = out.data().data();
    parallel_for(d.nz, exec, [&](std::size_t z) {
        for (std::size_t i = z * plane; i < (z + 1) * plane; ++i) dst[i] = src[i] >= threshold ? 1 : 0;
    });
    return out;
}

FilterResult run_multiscale_filter(const GrayVolume& vol, const ScaleSet& scales, const Execution& exec) {
    FilterResult result{BinaryVolume(vol.dims(), 0), {}};
    auto combined = result.combined.data();
    for (const ScaleParameter& s : scales.scales()) {
        const auto t0 = std::chrono::steady_clock::now();
        const BinaryVolume b = binarize_scale(max_entry_response(vol, s, exec), exec);
        const auto src = b.data();
        for (std::size_t i = 0; i < src.size(); ++i) combined[i] |= src[i];
        const auto t1 = std::chrono::steady_clock::now();
        result.per_scale.push_back(
            {s.sigma(), std::chrono::duration<double, std::milli>(t1 - t0).count(), count_foreground(b)});
    }
    return result;
}

BinaryVolume multiscale_filter(const GrayVolume& vol, const ScaleSet& scales, const Execution& exec) {
    return run_multiscale_filter(vol, scales, exec).combined;
}

}  // namespace crackdet
