#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qte {

enum class FeatureKind { Categorical, BinnedContinuous, RescaledContinuous };

// Per-feature encoding description. Categorical and binned features carry an
// ordered vocabulary / bin count and occupy ceil(log2 c) bits; rescaled
// features map min-max onto [0, 2pi) and occupy no bits.
struct Feature {
    std::string name;
    FeatureKind kind = FeatureKind::Categorical;
    std::vector<std::string> vocabulary; // categorical: lexicographic order
    std::vector<double> bin_edges;       // binned: upper quartile thresholds
    double min = 0, max = 0;             // rescaled

    int categories() const;
    int bit_width() const;

    int ordinal_of(const std::string& raw) const; // categorical
    int bin_of(double v) const;                   // binned
    double rescale(double v) const;               // rescaled, [0, 2pi)
    const std::string& value_of(int ordinal) const;
};

struct FeatureCodec {
    std::vector<Feature> features;

    int total_bits() const;
    // Stable fingerprint of the codec definition (vocabulary order included).
    std::uint64_t hash() const;
};

} // namespace qte
