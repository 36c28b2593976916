// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <array>
#include <cstdint>

#include "puft/bytes.hpp"
#include "puft/ecdsa.hpp"
#include "puft/meter.hpp"

namespace puft {

// Server-signed record of a miner's training contribution. The winner's
// certificate is the proof embedded (by hash) in a block header; losing
// miners receive one too, as a receipt with no ledger role.
//
// Signed region layout (89 bytes, all big-endian):
//   miner_pubkey[33] | cycle_id u64 | params_trained u64 |
//   loss_before f64 | loss_after f64 | timestamp u64 | cert_nonce[16]
// The server signature covers exactly these bytes and travels after them.
struct Certificate {
    ecdsa::CompressedPubkey miner_pubkey{};
    uint64_t cycle_id = 0;
    uint64_t params_trained = 0;
    double loss_before = 0.0;
    double loss_after = 0.0;
    uint64_t timestamp = 0;
    std::array<uint8_t, 16> cert_nonce{};
    ecdsa::Signature server_signature;

    static constexpr size_t kSignedRegionBytes = 89;
    static constexpr size_t kSerializedBytes = kSignedRegionBytes + ecdsa::kSignatureBytes;

    Bytes signed_region() const;
    Bytes serialize() const;
    static Certificate deserialize(ByteSpan bytes);

    // double_sha256 over the signed region; this is what block headers bind.
    Hash256 hash(OpMeter* meter = nullptr) const;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Throws NonFiniteMetric when either loss is not finite.
Certificate issue_certificate(const ecdsa::KeyPair& server_key,
                              const ecdsa::CompressedPubkey& miner_pubkey,
                              uint64_t cycle_id, uint64_t params_trained,
                              double loss_before, double loss_after,
                              uint64_t timestamp,
                              const std::array<uint8_t, 16>& cert_nonce);

bool verify_certificate(const ecdsa::PublicKey& server_pub, const Certificate& cert);
// Parse failure of the server key returns false.
bool verify_certificate(ByteSpan server_pub33, const Certificate& cert);

}  // namespace puft
