#include "qte/zz_feature_map.hpp"

#include <numbers>
#include <stdexcept>

namespace qte {

Circuit zz_feature_map(std::span<const double> x, int depth) {
    if (x.empty()) throw std::invalid_argument("ZZ feature map needs at least one feature");
    if (depth < 1) throw std::invalid_argument("ZZ feature map depth must be >= 1");
    const int n = static_cast<int>(x.size());
    const double pi = std::numbers::pi;
    Circuit c(n);
    for (int rep = 0; rep < depth; ++rep) {
        for (int q = 0; q < n; ++q) c.append(Gate::h(q));
        for (int q = 0; q < n; ++q) c.append(Gate::rz(q, 2.0 * x[q]));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                c.append(Gate::cx(i, j));
                c.append(Gate::rz(j, 2.0 * (pi - x[i]) * (pi - x[j])));
                c.append(Gate::cx(i, j));
            }
    }
    return c;
}

} // namespace qte
