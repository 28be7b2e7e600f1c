#pragma once

#include "qte/statevector.hpp"

namespace qte {

// Correctness oracle: embeds the gate in a full 2^n x 2^n matrix built from
// Kronecker products and multiplies it out. Quadratic in the dimension, so
// it refuses registers above 5 qubits. Used by tests only.
StateVector dense_oracle_apply(const StateVector& state, const Gate& g);

} // namespace qte
