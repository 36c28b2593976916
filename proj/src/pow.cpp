// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/pow.hpp"

#include <algorithm>
#include <cstring>

#include "puft/errors.hpp"
#include "puft/sha256.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace puft {

namespace {

// Hash the 117-byte header with the nonce patched in at its fixed offset.
inline bool attempt(Bytes& header_bytes, uint64_t nonce, const U256& target) {
    uint8_t* p = header_bytes.data() + BlockHeader::kNonceOffset;
    for (int i = 0; i < 8; ++i) p[i] = uint8_t(nonce >> (56 - 8 * i));
    Hash256 h = double_sha256(header_bytes);
    return U256::from_be_bytes(h) < target;
}

// First valid nonce in [begin, end), or UINT64_MAX.
uint64_t scan_range(const Bytes& header_bytes, uint64_t begin, uint64_t end,
                    const U256& target) {
    Bytes local = header_bytes;
    for (uint64_t nonce = begin; nonce < end; ++nonce) {
        if (attempt(local, nonce, target)) return nonce;
    }
    return UINT64_MAX;
}

}  // namespace

PowTarget PowTarget::from_difficulty_bits(unsigned bits) {
    if (bits == 0) return PowTarget{U256::max()};
    if (bits > 255) raise(Errc::ConfigInvalid, "difficulty_bits must be <= 255");
    return PowTarget{U256::pow2(256 - bits)};
}

MineResult pow_mine_serial(const BlockHeader& header_template, PowTarget target,
                           uint64_t max_attempts, OpMeter* meter) {
    Bytes header_bytes = header_template.serialize();
    for (uint64_t nonce = 0; nonce < max_attempts; ++nonce) {
        if (attempt(header_bytes, nonce, target.value)) {
            meter_hash(meter, nonce + 1);
            return MineResult{nonce, nonce + 1};
        }
    }
    meter_hash(meter, max_attempts);
    raise(Errc::TargetUnreachable, "no nonce below target within attempt budget");
}

MineResult pow_mine(const BlockHeader& header_template, PowTarget target,
                    uint64_t max_attempts, OpMeter* meter) {
#if defined(_OPENMP)
    // Chunked scan: threads race within a stripe of chunks, then the minimum
    // valid nonce across the stripe is taken, which is exactly the nonce the
    // serial scan would have found. Attempts are counted as nonce + 1 (the
    // serial-equivalent cost), keeping the meter independent of thread count.
    constexpr uint64_t kChunk = 2048;
    const Bytes header_bytes = header_template.serialize();
    const int threads = std::max(1, omp_get_max_threads());
    const uint64_t stripe = kChunk * uint64_t(threads);

    for (uint64_t base = 0; base < max_attempts; base += stripe) {
        uint64_t found = UINT64_MAX;
#pragma omp parallel for schedule(static) reduction(min : found)
        for (int t = 0; t < threads; ++t) {
            uint64_t begin = base + uint64_t(t) * kChunk;
            uint64_t end = std::min(begin + kChunk, max_attempts);
            if (begin < end) {
                uint64_t hit = scan_range(header_bytes, begin, end, target.value);
                found = std::min(found, hit);
            }
        }
        if (found != UINT64_MAX) {
            meter_hash(meter, found + 1);
            return MineResult{found, found + 1};
        }
    }
    meter_hash(meter, max_attempts);
    raise(Errc::TargetUnreachable, "no nonce below target within attempt budget");
#else
    return pow_mine_serial(header_template, target, max_attempts, meter);
#endif
}

bool pow_verify(const BlockHeader& header, PowTarget target) {
    Hash256 h = double_sha256(header.serialize());
    return U256::from_be_bytes(h) < target.value;
}

}  // namespace puft
