// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <array>
#include <optional>

#include "puft/bytes.hpp"
#include "puft/u256.hpp"

namespace puft::ecdsa {

// secp256k1: y^2 = x^3 + 7 over GF(p). Curve parameters are the published
// constants; the arithmetic lives in ecdsa.cpp. Signing is deterministic
// (HMAC-SHA256 nonce derivation per the RFC 6979 construction) and emitted
// signatures are low-s normalized, so a given (key, message) pair always
// yields the same bytes. Not constant-time; this is simulation-grade crypto,
// not a wallet.

inline constexpr size_t kCompressedPubkeyBytes = 33;
inline constexpr size_t kSignatureBytes = 64;

using CompressedPubkey = std::array<uint8_t, kCompressedPubkeyBytes>;

struct Signature {
    U256 r;
    U256 s;

    // r || s, each 32 bytes big-endian.
    std::array<uint8_t, kSignatureBytes> serialize() const;
    static Signature deserialize(const uint8_t* p);
    friend bool operator==(const Signature&, const Signature&) = default;
};

struct PublicKey {
    U256 x;
    U256 y;

    CompressedPubkey serialize_compressed() const;
    // Rejects bad prefixes, x >= p, and points off the curve.
    static std::optional<PublicKey> parse_compressed(ByteSpan bytes33);
    friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
    U256 secret;  // in [1, n-1]
    PublicKey pub;
};

// Order of the group; exposed for tests (low-s bound checks, range checks).
const U256& curve_order();
const U256& curve_order_half();

// Deterministic key derivation: hash the seed (with a rejection counter)
// until the result lands in [1, n-1].
KeyPair generate_keypair(ByteSpan seed32);

// ECDSA over SHA-256(message). Pure function of (key, message).
Signature sign(const KeyPair& key, ByteSpan message);

bool verify(const PublicKey& pub, ByteSpan message, const Signature& sig);
// Convenience: parse failure (malformed point) returns false, never throws.
bool verify(ByteSpan pubkey33, ByteSpan message, const Signature& sig);

}  // namespace puft::ecdsa
