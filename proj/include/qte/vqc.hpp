#pragma once

#include <span>

#include "qte/ansatz.hpp"
#include "qte/statevector.hpp"

namespace qte {

// Total probability of the odd-bit-parity basis states: the VQC's P(class 1).
double parity_probability(const StateVector& state);

// Runs the embedding then the ansatz from |0...0> and reads P(class 1).
double vqc_class1_probability(const Circuit& embedding, const RyRzAnsatz& ansatz,
                              std::span<const double> params);

// Ansatz applied to a precomputed embedded state (the embedding of a fixed
// scheme does not change between optimizer steps).
double vqc_class1_probability(const StateVector& embedded, const Circuit& ansatz_circuit);

// Label 1 iff P(class 1) >= 0.5.
inline int vqc_label(double p_class1) { return p_class1 >= 0.5 ? 1 : 0; }

} // namespace qte
