// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "puft/bytes.hpp"
#include "puft/certificate.hpp"
#include "puft/meter.hpp"

namespace puft {

enum class ProofKind : uint8_t {
    PowNonce = 0,
    TrainingCertificate = 1,
};

// Canonical header layout, 117 bytes, all integers big-endian:
//   version u32 | prev_hash[32] | merkle_root[32] | timestamp u64 |
//   proof_kind u8 | nonce u64 | certificate_hash[32]
// Exactly one proof field is live per proof_kind: PoW blocks search the
// nonce and keep certificate_hash all-zero; certificate blocks fix nonce = 0
// and bind the certificate's hash. timestamp is the logical cycle index.
struct BlockHeader {
    uint32_t version = 1;
    Hash256 prev_hash{};
    Hash256 merkle_root{};
    uint64_t timestamp = 0;
    ProofKind proof_kind = ProofKind::PowNonce;
    uint64_t nonce = 0;
    Hash256 certificate_hash{};

    static constexpr size_t kSerializedBytes = 117;
    static constexpr size_t kNonceOffset = 77;

    Bytes serialize() const;
    static BlockHeader deserialize(ByteSpan bytes);
    Hash256 hash(OpMeter* meter = nullptr) const;

    friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

struct Block {
    BlockHeader header;
    std::vector<Bytes> transactions;
    std::optional<Certificate> certificate;  // present iff TrainingCertificate

    // header | ntx u32 | (len u32, bytes)* | has_cert u8 | certificate?
    Bytes serialize() const;
    static Block deserialize(ByteSpan bytes);

    friend bool operator==(const Block&, const Block&) = default;
};

struct Chain {
    std::vector<Block> blocks;

    size_t height() const { return blocks.size(); }
    // All-zero for the empty chain; the first block links to this.
    Hash256 tip_hash() const {
        return blocks.empty() ? Hash256{} : blocks.back().header.hash();
    }
};

}  // namespace puft
