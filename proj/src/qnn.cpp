#include "qte/qnn.hpp"

#include <stdexcept>

namespace qte {

void QnnReadout::append_to(Circuit& c, std::span<const double> params) const {
    if (static_cast<int>(params.size()) != param_count())
        throw std::invalid_argument("readout expects " + std::to_string(param_count()) +
                                    " parameters, got " + std::to_string(params.size()));
    const int r = num_inputs;
    if (dressed) c.append(Gate::h(r));
    for (int i = 0; i < num_inputs; ++i) c.append(Gate::xx(i, r, params[i]));
    for (int i = 0; i < num_inputs; ++i) c.append(Gate::zz(i, r, params[num_inputs + i]));
    if (dressed) c.append(Gate::h(r));
}

Circuit QnnReadout::build(std::span<const double> params) const {
    Circuit c(total_qubits());
    append_to(c, params);
    return c;
}

double qnn_label1_probability(const Circuit& embedding, const QnnReadout& readout,
                              std::span<const double> params) {
    if (embedding.num_qubits != readout.num_inputs)
        throw std::invalid_argument("embedding acts on " +
                                    std::to_string(embedding.num_qubits) +
                                    " qubits but the readout expects " +
                                    std::to_string(readout.num_inputs) + " inputs");
    StateVector s(readout.total_qubits());
    s.apply(embedding); // embedding circuit is narrower; targets stay in [0, k)
    Circuit w(readout.total_qubits());
    readout.append_to(w, params);
    s.apply(w);
    return s.marginal_probability(readout.num_inputs, 1);
}

} // namespace qte
