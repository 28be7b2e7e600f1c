#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qte/circuit.hpp"
#include "qte/gates.hpp"

namespace qte {

// Dense amplitudes of an n-qubit register. Basis index bit q is the state of
// qubit q (little-endian). Gate application mutates the owned buffer; the
// free function apply_gate below gives the value-style interface.
class StateVector {
  public:
    static constexpr int kMaxQubits = 20;

    // |0...0> on n qubits. Throws ConfigError for n outside [1, 20].
    explicit StateVector(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx amplitude(std::size_t i) const { return amps_[i]; }
    void set_amplitude(std::size_t i, cplx v) { amps_[i] = v; }

    void apply(const Gate& g);
    void apply(const Circuit& c);

    // |alpha_i|^2 for every basis index.
    std::vector<double> probabilities() const;

    // P(qubit reads `outcome`), outcome in {0, 1}.
    double marginal_probability(int qubit, int outcome) const;

    // Seeded measurement histogram, keyed by basis index; counts sum to shots.
    std::map<std::uint64_t, std::int64_t> sample_counts(std::int64_t shots,
                                                        std::uint64_t seed) const;

    double norm_squared() const;

  private:
    void apply_single(const Gate& g);
    void apply_two(const Gate& g);

    int num_qubits_;
    std::vector<cplx> amps_;
};

StateVector new_zero_state(int num_qubits);
StateVector apply_gate(StateVector state, const Gate& g);
StateVector run_circuit(const Circuit& c);

} // namespace qte
