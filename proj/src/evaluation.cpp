#include "crackdet/evaluation.hpp"

#include <cstdio>
#include <ostream>

namespace crackdet {

ConfusionCounts confusion(std::span<const RegionLabel> predicted, const std::vector<bool>& truth) {
    if (predicted.size() != truth.size()) {
        throw InputError("prediction has " + std::to_string(predicted.size()) + " regions, truth has " +
                         std::to_string(truth.size()));
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const bool pos = predicted[i] == RegionLabel::Crack;
        if (pos && truth[i]) ++c.tp;
        else if (pos) ++c.fp;
        else if (truth[i]) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double f1_score(double precision, double recall) noexcept {
    const double s = precision + recall;
    return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

Metrics metrics(const ConfusionCounts& c) {
    auto ratio = [](std::size_t a, std::size_t b) {
        return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
    };
    Metrics m;
    m.precision = ratio(c.tp, c.tp + c.fp);
    m.recall = ratio(c.tp, c.tp + c.fn);
    m.f1 = f1_score(m.precision, m.recall);
    return m;
}

void write_metrics_csv(std::span<const MetricsRow> rows, std::ostream& out) {
    out << "image,delta,g,precision,recall,f1\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.7f,%.7f,%.7f", r.m.precision, r.m.recall, r.m.f1);
        out << r.image << ',' << r.delta << ',' << r.g << ',' << buf << '\n';
    }
}

}  // namespace crackdet
