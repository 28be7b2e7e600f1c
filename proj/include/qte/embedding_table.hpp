#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qte/bloch.hpp"

namespace qte {

enum class TeInit { Random, QracCorners };

// Trainable per-slot lookup from m-bit patterns to u3 rotation angles.
// Each of the `slots` encoder positions owns its own 2^m entries of
// (theta, phi); flat layout is [slot][entry][theta, phi]. Entry index is the
// value of the bit pattern with the first bit as the most significant.
class EmbeddingTable {
  public:
    EmbeddingTable(int chunk_bits, int slots);

    // theta ~ U[0, pi), phi ~ U[0, 2pi) per entry, seeded.
    static EmbeddingTable random(int chunk_bits, int slots, std::uint64_t seed);
    // Entries start at the (3,1)-QRAC cube corners; chunk_bits must be 3.
    static EmbeddingTable qrac_corners(int slots);

    int chunk_bits() const { return chunk_bits_; }
    int slots() const { return slots_; }
    int entries_per_slot() const { return 1 << chunk_bits_; }
    std::size_t param_count() const { return params_.size(); }

    double theta(int slot, int entry) const { return params_[offset(slot, entry)]; }
    double phi(int slot, int entry) const { return params_[offset(slot, entry) + 1]; }
    void set(int slot, int entry, double theta, double phi);

    BlochVector bloch_of(int slot, int entry) const;
    BlochVector bloch_of(int slot, std::string_view bits) const;

    std::span<double> params() { return params_; }
    std::span<const double> params() const { return params_; }
    void load(std::span<const double> flat);

  private:
    std::size_t offset(int slot, int entry) const;

    int chunk_bits_;
    int slots_;
    std::vector<double> params_;
};

// Entry index of an m-bit pattern (first character = most significant bit).
int entry_of_bits(std::string_view bits);

// Initialization per the mode above. QracCorners requires chunk_bits == 3:
// no (4,1)-QRAC exists and the (2,1) square is not used as an init.
EmbeddingTable te_init(int chunk_bits, int slots, TeInit mode, std::uint64_t seed);

} // namespace qte
