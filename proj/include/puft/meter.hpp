// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>

namespace puft {

// Deterministic operation accounting. hash_ops counts double-SHA-256
// evaluations performed by consensus-layer code (mining attempts, header and
// certificate hashing, Merkle nodes, lottery seeds). training_flops counts
// floating-point work in the gradient/update/evaluation paths, computed from
// the closed-form per-kernel formulas rather than instrumentation so the
// totals replay identically regardless of thread count.
struct OpMeter {
    uint64_t hash_ops = 0;
    uint64_t training_flops = 0;
};

inline void meter_hash(OpMeter* meter, uint64_t n = 1) {
    if (meter) meter->hash_ops += n;
}

inline void meter_flops(OpMeter* meter, uint64_t n) {
    if (meter) meter->training_flops += n;
}

}  // namespace puft
