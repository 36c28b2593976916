// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "puft/block.hpp"
#include "puft/meter.hpp"
#include "puft/u256.hpp"

namespace puft {

struct PowTarget {
    U256 value;

    // 2^(256 - bits); bits = 0 means the all-ones accept-everything target.
    static PowTarget from_difficulty_bits(unsigned bits);
};

struct MineResult {
    uint64_t nonce = 0;
    // Hash evaluations a serial scan from nonce 0 performs to reach this
    // nonce, i.e. nonce + 1. The parallel kernel returns the same minimal
    // nonce, so the count is identical regardless of thread count.
    uint64_t attempts = 0;
};

// Scans nonces 0, 1, 2, ... for double_sha256(header) < target. Throws
// TargetUnreachable after max_attempts hashes (metered as max_attempts).
MineResult pow_mine(const BlockHeader& header_template, PowTarget target,
                    uint64_t max_attempts, OpMeter* meter = nullptr);

// Plain serial scan, kept as the reference the parallel kernel is tested
// against.
MineResult pow_mine_serial(const BlockHeader& header_template, PowTarget target,
                           uint64_t max_attempts, OpMeter* meter = nullptr);

bool pow_verify(const BlockHeader& header, PowTarget target);

}  // namespace puft
