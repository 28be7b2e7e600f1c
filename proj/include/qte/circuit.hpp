#pragma once

#include <vector>

#include "qte/gates.hpp"

namespace qte {

// Ordered gate list on a fixed register size.
struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : num_qubits(n) {}

    void append(const Gate& g);
    // Appends all of src's gates with qubit indices shifted by offset.
    void append_shifted(const Circuit& src, int offset);

    std::size_t size() const { return gates.size(); }
};

} // namespace qte
