// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <cstring>

#include "puft/bytes.hpp"

namespace puft {

// FIPS 180-4 SHA-256, streaming interface.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    Sha256& update(ByteSpan data);
    Sha256& update(const void* data, size_t len) {
        return update(ByteSpan(static_cast<const uint8_t*>(data), len));
    }
    Hash256 finalize();

private:
    void compress(const uint8_t* block);

    uint32_t state_[8];
    uint8_t buf_[64];
    size_t buf_len_ = 0;
    uint64_t total_len_ = 0;
};

Hash256 sha256(ByteSpan data);
// SHA-256 applied twice, the header-hashing convention used throughout the
// ledger.
Hash256 double_sha256(ByteSpan data);

// Compression-function invocations needed to hash a message of `len` bytes
// (padding included). Used by the usefulness accounting documentation; the
// operation meter counts whole double-SHA-256 evaluations.
constexpr uint64_t sha256_compressions(uint64_t len) { return (len + 8) / 64 + 1; }

Hash256 hmac_sha256(ByteSpan key, ByteSpan data);

}  // namespace puft
