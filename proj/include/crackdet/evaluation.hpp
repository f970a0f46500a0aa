#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "crackdet/classifier.hpp"

namespace crackdet {

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    [[nodiscard]] std::size_t total() const noexcept { return tp + fp + tn + fn; }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Region-level counts; only RegionLabel::Crack is a positive prediction.
/// Throws InputError on a length mismatch.
[[nodiscard]] ConfusionCounts confusion(std::span<const RegionLabel> predicted, const std::vector<bool>& truth);

/// 0/0 is taken as 0 for every ratio.
[[nodiscard]] Metrics metrics(const ConfusionCounts& counts);
/// F1 from precision and recall, 0 when both are 0.
[[nodiscard]] double f1_score(double precision, double recall) noexcept;

struct MetricsRow {
    std::string image;
    std::size_t delta = 0;
    std::size_t g = 0;
    Metrics m;
};

/// `image,delta,g,precision,recall,f1` header plus rows; 7 decimals per metric.
void write_metrics_csv(std::span<const MetricsRow> rows, std::ostream& out);

}  // namespace crackdet
