#include "qte/dataset.hpp"

#include <stdexcept>

#include "qte/errors.hpp"
#include "qte/rng.hpp"

namespace qte {

int parity_of(std::string_view bits) {
    int p = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        p ^= (c - '0');
    }
    return p;
}

std::vector<Sample> parity_dataset(int nbits) {
    if (nbits < 1 || nbits > 12) throw ConfigError("parity width must be in [1, 12]");
    std::vector<Sample> out;
    out.reserve(std::size_t{1} << nbits);
    for (std::uint32_t v = 0; v < (1u << nbits); ++v) {
        Sample s;
        s.bits = ordinal_to_bits(static_cast<int>(v), nbits);
        s.label = parity_of(s.bits);
        out.push_back(std::move(s));
    }
    return out;
}

std::string ordinal_to_bits(int index, int width) {
    if (width < 1 || width > 31) throw std::invalid_argument("bit width out of range");
    if (index < 0 || index >= (1 << width))
        throw std::invalid_argument("ordinal " + std::to_string(index) +
                                    " does not fit in " + std::to_string(width) + " bits");
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
        if (index & (1 << (width - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

int bits_to_ordinal(std::string_view bits) {
    int v = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        v = (v << 1) | (c - '0');
    }
    return v;
}

SplitPart oversample_positive(SplitPart part, std::uint64_t seed) {
    if (part.oversampled) return part;
    std::vector<Sample> out = part.samples;
    for (const Sample& s : part.samples)
        if (s.label == 1) out.push_back(s);
    Rng rng(seed);
    shuffle_in_place(out, rng);
    return {std::move(out), true};
}

std::vector<Fold> kfold_split(const std::vector<Sample>& samples, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("k-fold split needs k >= 2");
    if (static_cast<std::size_t>(k) > samples.size())
        throw std::invalid_argument("more folds than samples");

    std::vector<std::size_t> neg, pos;
    for (std::size_t i = 0; i < samples.size(); ++i)
        (samples[i].label == 1 ? pos : neg).push_back(i);

    Rng rng(seed);
    shuffle_in_place(neg, rng);
    shuffle_in_place(pos, rng);

    std::vector<std::vector<std::size_t>> fold_indices(static_cast<std::size_t>(k));
    std::size_t cursor = 0;
    for (const auto* cls : {&neg, &pos})
        for (std::size_t idx : *cls) fold_indices[cursor++ % k].push_back(idx);

    std::vector<Fold> folds(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f) {
        for (int g = 0; g < k; ++g) {
            auto& dst = (g == f) ? folds[f].validation.samples : folds[f].train.samples;
            for (std::size_t idx : fold_indices[g]) dst.push_back(samples[idx]);
        }
    }
    return folds;
}

} // namespace qte
