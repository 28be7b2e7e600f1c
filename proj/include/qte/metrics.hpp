#pragma once

#include <span>
#include <stdexcept>

namespace qte {

struct Metrics {
    double accuracy = 0;
    double f1 = 0;
};

// Accuracy and F1 for binary predictions. F1 with an empty denominator
// (no positive predictions and no positive labels reached) is 0.
inline Metrics compute_metrics(std::span<const int> preds, std::span<const int> labels) {
    if (preds.empty() || preds.size() != labels.size())
        throw std::invalid_argument("metrics need equal-length non-empty inputs");
    long correct = 0, tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == labels[i]) ++correct;
        if (preds[i] == 1 && labels[i] == 1) ++tp;
        if (preds[i] == 1 && labels[i] == 0) ++fp;
        if (preds[i] == 0 && labels[i] == 1) ++fn;
    }
    Metrics m;
    m.accuracy = static_cast<double>(correct) / preds.size();
    const double denom = 2.0 * tp + fp + fn;
    m.f1 = denom > 0 ? 2.0 * tp / denom : 0.0;
    return m;
}

} // namespace qte
