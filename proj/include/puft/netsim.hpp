// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <deque>
#include <functional>
#include <map>

#include "puft/config.hpp"
#include "puft/cycle.hpp"

namespace puft {

enum class MsgKind : uint8_t {
    Register,
    AssignTask,
    SubmitUpdate,
    PublishScores,
    AnnounceWinner,
    ProposeBlock,
    ValidationResult,
};

// Addresses: miners use their ids, the coordination server is kServerAddr.
inline constexpr uint32_t kServerAddr = 0xFFFFFFFF;

struct SimMessage {
    MsgKind kind = MsgKind::Register;
    uint32_t sender = 0;
    uint32_t receiver = 0;
    Bytes payload;
    uint64_t deliver_at = 0;
    uint64_t seq = 0;  // send order, breaks delivery ties
};

// Seeded-latency message fabric. Every send is delayed 1 tick plus a uniform
// draw from [min_ticks, max_ticks]; delivery order is (deliver_at, sender,
// seq), so a scenario seed fixes the entire schedule.
class MessageQueue {
public:
    MessageQueue(uint64_t latency_seed, LatencyConfig latency)
        : rng_(latency_seed), latency_(latency) {}

    void send(MsgKind kind, uint32_t sender, uint32_t receiver, Bytes payload,
              uint64_t send_tick);

    bool empty() const { return pending_.empty(); }
    // Earliest pending delivery tick; only valid when not empty.
    uint64_t next_due() const;

private:
    friend std::vector<SimMessage> deliver_messages(MessageQueue& queue,
                                                    uint64_t current_tick);
    std::vector<SimMessage> pending_;
    Rng rng_;
    LatencyConfig latency_;
    uint64_t next_seq_ = 0;
};

// Removes and returns every message due at or before current_tick, ordered
// by (deliver_at, sender, seq).
std::vector<SimMessage> deliver_messages(MessageQueue& queue, uint64_t current_tick);

struct UsefulnessMetric {
    uint64_t hash_ops = 0;
    uint64_t training_flops = 0;
    double per_hash_op_cost = 1.0;

    double useful_fraction() const {
        double denom = double(training_flops) + double(hash_ops) * per_hash_op_cost;
        return denom > 0.0 ? double(training_flops) / denom : 0.0;
    }
};

struct MetricSnapshot {
    uint64_t hash_ops = 0;
    uint64_t training_flops = 0;
};

struct ScenarioResult {
    Chain chain;
    std::vector<CycleRecord> records;
    std::vector<MetricSnapshot> per_cycle;  // cumulative totals at cycle end
    UsefulnessMetric metric;
    std::map<uint32_t, uint64_t> reward_ledger;
    ecdsa::CompressedPubkey server_pubkey{};
    std::vector<double> final_params;
};

// Test hooks; corrupt_block mutates the winner's proposal before broadcast
// (for validation-unanimity scenarios).
struct ScenarioHooks {
    std::function<void(uint64_t cycle_id, Block&)> corrupt_block;
};

// Drives the full workflow for config.cycles cycles over the message fabric.
// Deterministic per config (byte-identical chain, records, and metrics on
// replay). Cycle-level failures are recorded, never thrown.
ScenarioResult run_scenario(const ScenarioConfig& config,
                            const ScenarioHooks& hooks = {});

struct BaselineResult {
    Chain chain;
    UsefulnessMetric metric;
    std::vector<MetricSnapshot> per_cycle;
    std::vector<uint64_t> attempts_per_block;
    uint64_t failed_cycles = 0;
};

// Nonce-search proof-of-work building the same number of blocks; all hash,
// no training.
BaselineResult run_baseline_pow(const ScenarioConfig& config);

struct ComparisonReport {
    double training_useful_fraction = 0.0;
    double baseline_useful_fraction = 0.0;
    double difference = 0.0;
    size_t chain_height = 0;
};

// Requires equal chain heights (HeightMismatch otherwise).
ComparisonReport compare_usefulness(const ScenarioResult& training,
                                    const BaselineResult& baseline);

}  // namespace puft
