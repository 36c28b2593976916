// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <span>

#include "puft/bytes.hpp"
#include "puft/meter.hpp"
#include "puft/training.hpp"

namespace puft {

// double_sha256(cycle_id as 8 big-endian bytes || canonical bytes of every
// accepted report, miner-id ascending). Anyone holding the published reports
// recomputes the identical seed; with no accepted reports the seed is just
// the hash of the cycle id.
Hash256 lottery_seed(uint64_t cycle_id, std::span<const TrainingReport> accepted_reports,
                     OpMeter* meter = nullptr);

// Smallest index j with cumsum(weights[0..j]) > u, where u is the seed read
// as a big-endian 256-bit integer divided by 2^256. The comparison is done
// in 256-bit fixed point (doubles in [0,1] convert exactly), so the draw is
// bit-reproducible everywhere. Throws DegenerateWeights when all weights are
// zero and ValidationError when they do not sum to 1 (±1e-9).
size_t weighted_lottery(std::span<const double> weights, const Hash256& seed);

}  // namespace puft
