#include "qte/embedding_table.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qte/errors.hpp"
#include "qte/qrac.hpp"
#include "qte/rng.hpp"

namespace qte {

EmbeddingTable::EmbeddingTable(int chunk_bits, int slots)
    : chunk_bits_(chunk_bits), slots_(slots) {
    if (chunk_bits < 1 || chunk_bits > 8) throw ConfigError("chunk_bits must be in [1, 8]");
    if (slots < 1) throw ConfigError("embedding table needs at least one slot");
    params_.assign(static_cast<std::size_t>(slots) * (std::size_t{1} << chunk_bits) * 2, 0.0);
}

EmbeddingTable EmbeddingTable::random(int chunk_bits, int slots, std::uint64_t seed) {
    EmbeddingTable t(chunk_bits, slots);
    Rng rng(seed);
    for (int s = 0; s < slots; ++s)
        for (int e = 0; e < t.entries_per_slot(); ++e)
            t.set(s, e, uniform_double(rng, 0.0, std::numbers::pi),
                  uniform_double(rng, 0.0, 2.0 * std::numbers::pi));
    return t;
}

EmbeddingTable EmbeddingTable::qrac_corners(int slots) {
    EmbeddingTable t(3, slots);
    for (int e = 0; e < 8; ++e) {
        char bits[4] = {char('0' + ((e >> 2) & 1)), char('0' + ((e >> 1) & 1)),
                        char('0' + (e & 1)), 0};
        auto [theta, phi] = qrac_angles(bits);
        for (int s = 0; s < slots; ++s) t.set(s, e, theta, phi);
    }
    return t;
}

void EmbeddingTable::set(int slot, int entry, double theta, double phi) {
    params_[offset(slot, entry)] = theta;
    params_[offset(slot, entry) + 1] = phi;
}

BlochVector EmbeddingTable::bloch_of(int slot, int entry) const {
    return bloch_from_angles(theta(slot, entry), phi(slot, entry));
}

BlochVector EmbeddingTable::bloch_of(int slot, std::string_view bits) const {
    return bloch_of(slot, entry_of_bits(bits));
}

void EmbeddingTable::load(std::span<const double> flat) {
    if (flat.size() != params_.size())
        throw std::invalid_argument("embedding table size mismatch");
    params_.assign(flat.begin(), flat.end());
}

std::size_t EmbeddingTable::offset(int slot, int entry) const {
    if (slot < 0 || slot >= slots_) throw std::invalid_argument("slot out of range");
    if (entry < 0 || entry >= entries_per_slot())
        throw std::invalid_argument("entry out of range");
    return (static_cast<std::size_t>(slot) * (std::size_t{1} << chunk_bits_) +
            static_cast<std::size_t>(entry)) *
           2;
}

int entry_of_bits(std::string_view bits) {
    int v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        v = (v << 1) | (c - '0');
    }
    return v;
}

EmbeddingTable te_init(int chunk_bits, int slots, TeInit mode, std::uint64_t seed) {
    switch (mode) {
    case TeInit::Random:
        return EmbeddingTable::random(chunk_bits, slots, seed);
    case TeInit::QracCorners:
        if (chunk_bits != 3)
            throw ConfigError("QRAC-corner init needs 3-bit chunks; no (" +
                              std::to_string(chunk_bits) + ",1)-QRAC exists");
        return EmbeddingTable::qrac_corners(slots);
    }
    throw ConfigError("unknown embedding init mode");
}

} // namespace qte
