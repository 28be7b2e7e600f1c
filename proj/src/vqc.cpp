#include "qte/vqc.hpp"

#include <bit>
#include <stdexcept>

namespace qte {

double parity_probability(const StateVector& state) {
    double p1 = 0.0;
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i)
        if (std::popcount(i) & 1) p1 += std::norm(amps[i]);
    return p1;
}

double vqc_class1_probability(const Circuit& embedding, const RyRzAnsatz& ansatz,
                              std::span<const double> params) {
    if (embedding.num_qubits != ansatz.num_qubits)
        throw std::invalid_argument("embedding acts on " +
                                    std::to_string(embedding.num_qubits) +
                                    " qubits but the ansatz expects " +
                                    std::to_string(ansatz.num_qubits));
    StateVector s(embedding.num_qubits);
    s.apply(embedding);
    Circuit w(ansatz.num_qubits);
    ansatz.append_to(w, params);
    s.apply(w);
    return parity_probability(s);
}

double vqc_class1_probability(const StateVector& embedded, const Circuit& ansatz_circuit) {
    StateVector s = embedded;
    s.apply(ansatz_circuit);
    return parity_probability(s);
}

} // namespace qte
