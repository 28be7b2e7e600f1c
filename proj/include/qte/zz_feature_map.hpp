#pragma once

#include <span>

#include "qte/circuit.hpp"

namespace qte {

// Second-order Pauli-Z feature map on one qubit per feature. Each repetition
// applies H on every qubit, RZ(2 x_i) on qubit i, and for every ordered pair
// i < j the entangled phase CX(i,j) RZ(2 (pi-x_i)(pi-x_j)) CX(i,j).
// Features are expected pre-scaled to [0, 2pi).
Circuit zz_feature_map(std::span<const double> x, int depth = 2);

} // namespace qte
