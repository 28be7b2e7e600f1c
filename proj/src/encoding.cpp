#include "qte/encoding.hpp"

#include <stdexcept>
#include <string>

#include "qte/errors.hpp"
#include "qte/qrac.hpp"

namespace qte {

int EncodingScheme::num_qubits() const {
    if (kind == SchemeKind::Naive) return input_bits;
    return slots() * copies;
}

EncodingScheme EncodingScheme::naive(int input_bits) {
    if (input_bits < 1) throw ConfigError("naive scheme needs at least one bit");
    EncodingScheme s;
    s.kind = SchemeKind::Naive;
    s.input_bits = input_bits;
    s.chunk_bits = 1;
    for (int i = 0; i < input_bits; ++i) s.chunks.push_back({i});
    return s;
}

EncodingScheme EncodingScheme::sequential(SchemeKind kind, int input_bits, int chunk_bits) {
    if (kind != SchemeKind::Qrac && kind != SchemeKind::TE)
        throw ConfigError("sequential scheme kind must be Qrac or TE");
    if (kind == SchemeKind::Qrac && chunk_bits != 2 && chunk_bits != 3)
        throw ConfigError("QRAC codewords exist for 2- or 3-bit chunks only");
    if (kind == SchemeKind::TE && (chunk_bits < 2 || chunk_bits > 4))
        throw ConfigError("TE chunk size must be 2, 3 or 4");
    if (input_bits < 1) throw ConfigError("sequential scheme needs at least one bit");
    EncodingScheme s;
    s.kind = kind;
    s.input_bits = input_bits;
    s.chunk_bits = chunk_bits;
    for (int start = 0; start < input_bits; start += chunk_bits) {
        std::vector<int> chunk;
        for (int b = start; b < start + chunk_bits && b < input_bits; ++b) chunk.push_back(b);
        s.chunks.push_back(std::move(chunk));
    }
    return s;
}

EncodingScheme EncodingScheme::n_copies_qrac(int input_bits, int copies) {
    if (copies < 1) throw ConfigError("copy count must be >= 1");
    EncodingScheme s = sequential(SchemeKind::Qrac, input_bits, 3);
    s.kind = SchemeKind::NCopiesQrac;
    s.copies = copies;
    return s;
}

EncodingScheme EncodingScheme::conv_row_col31() {
    EncodingScheme s;
    s.kind = SchemeKind::ConvRowCol31;
    s.input_bits = 16;
    s.chunk_bits = 3;
    auto px = [](int i, int j) { return (i - 1) * 4 + (j - 1); }; // 1-based row/col
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 2; ++j)
            s.chunks.push_back({px(i, j), px(i, j + 1), px(i, j + 2)});
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 4; ++j)
            s.chunks.push_back({px(i, j), px(i + 1, j), px(i + 2, j)});
    return s;
}

EncodingScheme EncodingScheme::conv_block41() {
    EncodingScheme s;
    s.kind = SchemeKind::ConvBlock41;
    s.input_bits = 16;
    s.chunk_bits = 4;
    auto px = [](int i, int j) { return (i - 1) * 4 + (j - 1); };
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            s.chunks.push_back({px(i, j), px(i, j + 1), px(i + 1, j), px(i + 1, j + 1)});
    return s;
}

int scheme_entry(const EncodingScheme& scheme, int slot, std::string_view bits) {
    const auto& chunk = scheme.chunks[slot];
    int v = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(scheme.chunk_bits); ++i) {
        int bit = 0;
        if (i < chunk.size()) {
            char c = bits[chunk[i]];
            if (c != '0' && c != '1')
                throw std::invalid_argument("bitstring may only contain '0' and '1'");
            bit = c - '0';
        }
        v = (v << 1) | bit;
    }
    return v;
}

namespace {

std::string padded_chunk_bits(const EncodingScheme& scheme, int slot, std::string_view bits) {
    std::string out;
    const auto& chunk = scheme.chunks[slot];
    for (int i = 0; i < scheme.chunk_bits; ++i)
        out.push_back(i < static_cast<int>(chunk.size()) ? bits[chunk[i]] : '0');
    return out;
}

} // namespace

Circuit embed_bitstring(std::string_view bits, const EncodingScheme& scheme,
                        const EmbeddingTable* table) {
    if (static_cast<int>(bits.size()) != scheme.input_bits)
        throw std::invalid_argument("input has " + std::to_string(bits.size()) +
                                    " bits, scheme expects " +
                                    std::to_string(scheme.input_bits));
    if (table && !scheme.accepts_table())
        throw std::invalid_argument("fixed scheme takes no embedding table");
    if (!table && scheme.requires_table())
        throw std::invalid_argument("trainable scheme needs an embedding table");
    if (table && (table->chunk_bits() != scheme.chunk_bits || table->slots() != scheme.slots()))
        throw std::invalid_argument("embedding table shape does not match the scheme");

    Circuit c(scheme.num_qubits());
    switch (scheme.kind) {
    case SchemeKind::Naive:
        for (int i = 0; i < scheme.input_bits; ++i)
            if (bits[i] == '1') c.append(Gate::x(i));
        return c;
    case SchemeKind::Qrac:
    case SchemeKind::NCopiesQrac:
        for (int copy = 0; copy < scheme.copies; ++copy)
            for (int s = 0; s < scheme.slots(); ++s) {
                auto [theta, phi] = qrac_angles(padded_chunk_bits(scheme, s, bits));
                c.append(Gate::u3(copy * scheme.slots() + s, theta, phi, 0.0));
            }
        return c;
    case SchemeKind::TE:
    case SchemeKind::ConvRowCol31:
    case SchemeKind::ConvBlock41:
        for (int s = 0; s < scheme.slots(); ++s) {
            if (table) {
                int e = scheme_entry(scheme, s, bits);
                c.append(Gate::u3(s, table->theta(s, e), table->phi(s, e), 0.0));
            } else {
                auto [theta, phi] = qrac_angles(padded_chunk_bits(scheme, s, bits));
                c.append(Gate::u3(s, theta, phi, 0.0));
            }
        }
        return c;
    }
    throw ConfigError("unknown scheme kind");
}

Circuit n_copies_qrac(std::string_view bits, int copies) {
    auto scheme = EncodingScheme::n_copies_qrac(static_cast<int>(bits.size()), copies);
    return embed_bitstring(bits, scheme);
}

} // namespace qte
