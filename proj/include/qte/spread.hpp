#pragma once

#include <span>
#include <vector>

#include "qte/embedding_table.hpp"

namespace qte {

// Spread regularizer of one slot: -det of the covariance of its 2^m Bloch
// vectors, covariance taken per vector, (1/n) sum_i (r_i - mu)(r_i - mu)^T.
// Zero when the vectors cluster or are coplanar; -1/27 at the QRAC cube.
double spread_loss(const EmbeddingTable& table, int slot);

// Sum over all slots.
double spread_loss(const EmbeddingTable& table);

// Analytic d(spread_loss)/d(theta, phi) for one slot, interleaved per entry
// (2 * 2^m values). Uses the adjugate form of Jacobi's formula, so it is
// well defined for singular covariances too.
std::vector<double> spread_grad(const EmbeddingTable& table, int slot);

// Adds lambda * d(sum-over-slots spread_loss)/dparams onto `grad`, which must
// have the table's flat layout.
void add_spread_grad(const EmbeddingTable& table, double lambda, std::span<double> grad);

} // namespace qte
