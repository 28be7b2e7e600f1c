#pragma once

#include <algorithm>
#include <cmath>

namespace qte {

inline constexpr double kProbClamp = 1e-12;

// Binary cross entropy on a predicted probability, clamped away from 0 and 1
// so the loss stays finite.
inline double bce_loss(double p, int y) {
    p = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
    return -(y ? std::log(p) : std::log(1.0 - p));
}

// d(bce)/dp at the clamped probability.
inline double bce_grad(double p, int y) {
    p = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
    return y ? -1.0 / p : 1.0 / (1.0 - p);
}

// Hinge loss on the signed score 2p - 1 against y in {0, 1}.
inline double hinge_loss(double p, int y) {
    const double margin = (y ? 1.0 : -1.0) * (2.0 * p - 1.0);
    return std::max(0.0, 1.0 - margin);
}

// One epoch's loss breakdown; total = data + lambda * spread.
struct LossReport {
    int epoch = 0;
    double total = 0;
    double data = 0;
    double spread = 0;
    double lambda = 0;
};

inline LossReport make_loss_report(int epoch, double data, double spread, double lambda) {
    return {epoch, data + lambda * spread, data, spread, lambda};
}

} // namespace qte
