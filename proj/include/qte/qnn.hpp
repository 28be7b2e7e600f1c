#pragma once

#include <span>

#include "qte/circuit.hpp"
#include "qte/statevector.hpp"

namespace qte {

// Readout block of the quantum neural network: an Ising XX gate from every
// input qubit toward the readout qubit, then an Ising ZZ layer with the same
// wiring. The readout qubit is index `num_inputs`; it starts in |0> and its
// computational-basis marginal is read directly.
//
// In dressed mode an H sandwiches the layers on the readout qubit. Without
// it the ZZ layer only writes phases, which the computational-basis readout
// cannot see; the X-basis sandwich makes both layers effective while an
// all-zero parameter vector still reads P(1) = 0.
struct QnnReadout {
    int num_inputs = 1; // k
    bool dressed = false;

    int param_count() const { return 2 * num_inputs; }
    int total_qubits() const { return num_inputs + 1; }

    // params = [xx_0..xx_{k-1}, zz_0..zz_{k-1}]
    void append_to(Circuit& c, std::span<const double> params) const;
    Circuit build(std::span<const double> params) const;
};

// Prepares the input register with `embedding` (acting on qubits [0, k)),
// applies the readout layers and returns P(readout qubit = 1).
double qnn_label1_probability(const Circuit& embedding, const QnnReadout& readout,
                              std::span<const double> params);

// Label 1 iff P > 0.5; the tie goes to label 0.
inline int qnn_label(double p_label1) { return p_label1 > 0.5 ? 1 : 0; }

} // namespace qte
