#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qte {

// One labelled input: a discrete bitstring part and/or a pre-scaled
// continuous part.
struct Sample {
    std::string bits;
    std::vector<double> reals;
    int label = 0;
};

// XOR of the bits.
int parity_of(std::string_view bits);

// Every n-bit string with its parity label; exactly 2^{n-1} per class.
std::vector<Sample> parity_dataset(int nbits);

// Big-endian binary of `index`, zero-padded to `width` characters.
std::string ordinal_to_bits(int index, int width);
int bits_to_ordinal(std::string_view bits);

// A train or validation part; the flag guards against oversampling twice.
struct SplitPart {
    std::vector<Sample> samples;
    bool oversampled = false;
};

// Doubles every positive sample and reshuffles. A part that was already
// oversampled is returned unchanged.
SplitPart oversample_positive(SplitPart part, std::uint64_t seed);

struct Fold {
    SplitPart train;
    SplitPart validation;
};

// Stratified k-fold split: per-class round-robin dealing after a seeded
// shuffle, with the leftover counter carried across classes so fold sizes
// differ by at most one.
std::vector<Fold> kfold_split(const std::vector<Sample>& samples, int k, std::uint64_t seed);

} // namespace qte
