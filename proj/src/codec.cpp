#include "qte/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qte {

int Feature::categories() const {
    switch (kind) {
    case FeatureKind::Categorical:
        return static_cast<int>(vocabulary.size());
    case FeatureKind::BinnedContinuous:
        return static_cast<int>(bin_edges.size()) + 1;
    case FeatureKind::RescaledContinuous:
        return 0;
    }
    return 0;
}

int Feature::bit_width() const {
    const int c = categories();
    if (c <= 1) return c; // 0 for rescaled, 1 bit for a (degenerate) single category
    return static_cast<int>(std::ceil(std::log2(static_cast<double>(c))));
}

int Feature::ordinal_of(const std::string& raw) const {
    auto it = std::find(vocabulary.begin(), vocabulary.end(), raw);
    if (it == vocabulary.end())
        throw std::invalid_argument("value '" + raw + "' not in vocabulary of " + name);
    return static_cast<int>(it - vocabulary.begin());
}

int Feature::bin_of(double v) const {
    int b = 0;
    for (double edge : bin_edges)
        if (v > edge) ++b;
    return b;
}

double Feature::rescale(double v) const {
    const double span = max - min;
    if (span <= 0) return 0.0;
    // keep the top of the range strictly below 2pi so min and max stay distinct
    return 2.0 * std::numbers::pi * (v - min) / (span * (1.0 + 1e-12));
}

const std::string& Feature::value_of(int ordinal) const {
    if (ordinal < 0 || ordinal >= static_cast<int>(vocabulary.size()))
        throw std::invalid_argument("ordinal out of range for " + name);
    return vocabulary[static_cast<std::size_t>(ordinal)];
}

int FeatureCodec::total_bits() const {
    int bits = 0;
    for (const auto& f : features) bits += f.bit_width();
    return bits;
}

std::uint64_t FeatureCodec::hash() const {
    // FNV-1a over the definition
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0xff;
        h *= 1099511628211ULL;
    };
    for (const auto& f : features) {
        mix(f.name);
        mix(std::to_string(static_cast<int>(f.kind)));
        for (const auto& v : f.vocabulary) mix(v);
        for (double e : f.bin_edges) mix(std::to_string(e));
    }
    return h;
}

} // namespace qte
