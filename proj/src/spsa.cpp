#include "qte/spsa.hpp"

#include <cmath>
#include <vector>

#include "qte/errors.hpp"

namespace qte {

double Spsa::step_size(int k) const { return gains_.a / std::pow(k + 1 + gains_.A, gains_.alpha); }

double Spsa::perturbation_size(int k) const { return gains_.c / std::pow(k + 1, gains_.gamma); }

Spsa::StepResult Spsa::step(std::span<double> params, int k,
                            const std::function<double(std::span<const double>)>& loss) {
    const std::size_t d = params.size();
    const double ak = step_size(k);
    const double ck = perturbation_size(k);

    std::vector<double> delta(d);
    for (double& v : delta) v = rademacher(rng_);

    std::vector<double> probe(params.begin(), params.end());
    for (std::size_t i = 0; i < d; ++i) probe[i] = params[i] + ck * delta[i];
    const double lp = loss(probe);
    for (std::size_t i = 0; i < d; ++i) probe[i] = params[i] - ck * delta[i];
    const double lm = loss(probe);

    if (!std::isfinite(lp) || !std::isfinite(lm)) return {lp, lm, true};

    const double scale = (lp - lm) / (2.0 * ck);
    for (std::size_t i = 0; i < d; ++i) {
        // 1/delta_i == delta_i for Rademacher entries
        params[i] -= ak * scale * delta[i];
        if (!std::isfinite(params[i]))
            throw NumericError("SPSA produced a non-finite parameter at step " +
                               std::to_string(k));
    }
    return {lp, lm, false};
}

} // namespace qte
