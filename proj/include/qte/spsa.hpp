#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "qte/rng.hpp"

namespace qte {

// Gain sequences a_k = a / (k+1+A)^alpha, c_k = c / (k+1)^gamma with Spall's
// recommended exponents.
struct SpsaGains {
    double a = 2.0;
    double c = 0.1;
    double alpha = 0.602;
    double gamma = 0.101;
    double A = 0.0;
};

// Simultaneous-perturbation stochastic approximation. Each step draws a
// Rademacher direction and spends exactly two loss evaluations.
class Spsa {
  public:
    Spsa(SpsaGains gains, std::uint64_t seed) : gains_(gains), rng_(seed) {}

    struct StepResult {
        double loss_plus = 0;
        double loss_minus = 0;
        bool skipped = false; // non-finite loss; parameters left unchanged
    };

    // One iteration at 0-based step index k; updates params in place.
    StepResult step(std::span<double> params, int k,
                    const std::function<double(std::span<const double>)>& loss);

    double step_size(int k) const;
    double perturbation_size(int k) const;

  private:
    SpsaGains gains_;
    Rng rng_;
};

} // namespace qte
