#pragma once

#include <span>

#include "qte/circuit.hpp"

namespace qte {

enum class Entanglement { Full, Linear };

// Layered RY/RZ variational form: `depth` blocks of [RY per qubit, RZ per
// qubit, CZ entangling layer], closed by one final RY+RZ rotation layer.
// Full entanglement couples every pair i < j; Linear couples neighbours only.
struct RyRzAnsatz {
    int num_qubits = 1;
    int depth = 0;
    Entanglement entanglement = Entanglement::Full;

    int param_count() const { return (depth + 1) * 2 * num_qubits; }

    // Appends the ansatz gates to an existing circuit (which may be wider).
    void append_to(Circuit& c, std::span<const double> params) const;
    Circuit build(std::span<const double> params) const;
};

} // namespace qte
