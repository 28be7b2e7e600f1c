#include "qte/ansatz.hpp"

#include <stdexcept>

namespace qte {

void RyRzAnsatz::append_to(Circuit& c, std::span<const double> params) const {
    if (static_cast<int>(params.size()) != param_count())
        throw std::invalid_argument("ansatz expects " + std::to_string(param_count()) +
                                    " parameters, got " + std::to_string(params.size()));
    std::size_t p = 0;
    auto rotation_layer = [&] {
        for (int q = 0; q < num_qubits; ++q) c.append(Gate::ry(q, params[p++]));
        for (int q = 0; q < num_qubits; ++q) c.append(Gate::rz(q, params[p++]));
    };
    for (int layer = 0; layer < depth; ++layer) {
        rotation_layer();
        if (entanglement == Entanglement::Full) {
            for (int i = 0; i < num_qubits; ++i)
                for (int j = i + 1; j < num_qubits; ++j) c.append(Gate::cz(i, j));
        } else {
            for (int i = 0; i + 1 < num_qubits; ++i) c.append(Gate::cz(i, i + 1));
        }
    }
    rotation_layer();
}

Circuit RyRzAnsatz::build(std::span<const double> params) const {
    Circuit c(num_qubits);
    append_to(c, params);
    return c;
}

} // namespace qte
