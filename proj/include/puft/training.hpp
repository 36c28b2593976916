// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "puft/bytes.hpp"
#include "puft/dataset.hpp"
#include "puft/model.hpp"

namespace puft {

struct ParameterShard {
    IndexRange range;
    std::vector<double> values;  // length range.size()

    friend bool operator==(const ParameterShard&, const ParameterShard&) = default;
};

// A miner's submission for one cycle. loss_before/loss_after are
// self-reported; the server replaces them with its own measurement during
// evaluation. params_trained is all-or-nothing: the shard length when the
// contribution is accepted, 0 otherwise.
struct TrainingReport {
    uint32_t miner_id = 0;
    ParameterShard shard;
    uint64_t params_trained = 0;
    double loss_before = 0.0;
    double loss_after = 0.0;
    uint64_t steps_used = 0;

    // miner_id u32 | range u64,u64 | values f64* | params_trained u64 |
    // loss_before f64 | loss_after f64 | steps_used u64, all big-endian.
    // This is the wire encoding of a submission and what the lottery seed
    // commits to.
    Bytes canonical_bytes() const;
    static TrainingReport from_canonical(ByteSpan bytes);

    friend bool operator==(const TrainingReport&, const TrainingReport&) = default;
};

// k contiguous, disjoint ranges covering [0, total); sizes differ by at most
// one with the first (total mod k) ranges getting the extra element. Throws
// TooManyMiners when k > total.
std::vector<IndexRange> partition_range(size_t total, size_t k);

inline std::vector<IndexRange> partition_model(const ModelSpec& spec, size_t k) {
    return partition_range(spec.parameter_count(), k);
}

// Contiguous ranges sized proportionally to the (non-negative) weights by
// largest remainder, every range non-empty when total >= weights.size().
// Equal weights reproduce partition_range exactly.
std::vector<IndexRange> partition_weighted(size_t total, std::span<const double> weights);

struct SgdParams {
    uint64_t steps = 0;
    double learning_rate = 0.0;
    size_t batch_size = 1;
    uint64_t seed = 0;
};

struct SgdResult {
    std::vector<double> shard_values;
    uint64_t steps_used = 0;
    // Set when an update produced a non-finite parameter; the offending step
    // is rolled back and training stops (DivergenceDetected condition).
    bool diverged = false;
    uint64_t flops = 0;
};

// Minibatch SGD restricted to shard coordinates; off-shard parameters are
// frozen. Batches are drawn with replacement from the partition unless
// batch_size >= rows, in which case every step uses the full partition in
// row order. Pure function of its arguments.
SgdResult sgd_train(const ModelSpec& spec, std::span<const double> full_params,
                    IndexRange shard_range, const Dataset& partition,
                    const SgdParams& params);

// Copy of base with each shard written into its range. Throws
// OverlappingShards if any two ranges intersect.
std::vector<double> assemble_model(std::span<const double> base,
                                   std::span<const ParameterShard> shards);

}  // namespace puft
