#pragma once

#include <string_view>
#include <vector>

#include "qte/circuit.hpp"
#include "qte/embedding_table.hpp"

namespace qte {

enum class SchemeKind { Naive, Qrac, TE, NCopiesQrac, ConvRowCol31, ConvBlock41 };

// How an S-bit string is chunked into encoder slots and mapped to qubits.
// chunks[s] lists the input bit positions feeding slot s, most significant
// first; a chunk shorter than chunk_bits is padded with 0-bits on the right.
// Slot s drives qubit s (repeated per copy group for NCopiesQrac).
struct EncodingScheme {
    SchemeKind kind = SchemeKind::Qrac;
    int input_bits = 0;
    int chunk_bits = 1;
    int copies = 1;
    std::vector<std::vector<int>> chunks;

    // Whether embed_bitstring accepts / requires a table for this scheme.
    // ConvRowCol31 works both ways: with a table it is conv-TE, without one
    // every window is a fixed (3,1)-QRAC codeword (C-QRAC). ConvBlock41 has
    // no fixed variant since no (4,1)-QRAC exists.
    bool accepts_table() const {
        return kind == SchemeKind::TE || kind == SchemeKind::ConvRowCol31 ||
               kind == SchemeKind::ConvBlock41;
    }
    bool requires_table() const {
        return kind == SchemeKind::TE || kind == SchemeKind::ConvBlock41;
    }
    int slots() const { return static_cast<int>(chunks.size()); }
    int num_qubits() const;

    static EncodingScheme naive(int input_bits);
    // kind must be Qrac or TE; chunk_bits in {2, 3} for Qrac, {2, 3, 4} for TE.
    static EncodingScheme sequential(SchemeKind kind, int input_bits, int chunk_bits);
    static EncodingScheme n_copies_qrac(int input_bits, int copies);
    // 3-pixel row and column windows of a 4x4 image, stride 1: 8 + 8 slots.
    static EncodingScheme conv_row_col31();
    // 2x2 blocks of a 4x4 image, stride 1, row-major: 9 slots.
    static EncodingScheme conv_block41();
};

// Builds the embedding circuit for one input: one u3(theta, phi, 0) per
// chunk-qubit (QRAC or table lookup), or one X per set bit (Naive).
// `table` must be present exactly when the scheme is trainable.
Circuit embed_bitstring(std::string_view bits, const EncodingScheme& scheme,
                        const EmbeddingTable* table = nullptr);

// The sequential (3,1)-QRAC circuit repeated on `copies` disjoint qubit groups.
Circuit n_copies_qrac(std::string_view bits, int copies);

// Entry index for slot `slot` of `scheme` given the full input string
// (applies the right-padding rule).
int scheme_entry(const EncodingScheme& scheme, int slot, std::string_view bits);

} // namespace qte
