// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "puft/block.hpp"
#include "puft/certificate.hpp"
#include "puft/chain_validate.hpp"
#include "puft/dataset.hpp"
#include "puft/lottery.hpp"
#include "puft/rng.hpp"
#include "puft/scoring.hpp"
#include "puft/training.hpp"

namespace puft {

// One block-production cycle walks these states strictly in order; the
// coordinator enforces the progression and throws on any out-of-order call.
enum class CycleState {
    Registration,
    Distribution,
    Training,
    Evaluation,
    Lottery,
    Certification,
    BlockProposal,
    Validation,
    Reward,
    Complete,
};

const char* cycle_state_name(CycleState s);

struct CycleConfig {
    uint64_t cycle_steps = 0;  // base per-miner SGD step budget per cycle
    double alpha = 0.5;        // parameter-volume weight in the score
    uint64_t reward = 0;
    double learning_rate = 0.0;
    size_t batch_size = 1;
};

struct RegisteredMiner {
    uint32_t miner_id = 0;
    ecdsa::CompressedPubkey pubkey{};
    double compute_budget = 1.0;
    std::string label;  // caller-supplied tag carried into the record
};

// What the server hands a registered miner: the current model, the shard it
// owns this cycle, its slice of the training rows, and its step budget.
struct Assignment {
    uint32_t miner_id = 0;
    IndexRange shard_range;
    std::vector<double> full_params;
    IndexRange data_rows;
    uint64_t step_budget = 0;
};

struct MinerCycleRecord {
    uint32_t miner_id = 0;
    std::string label;
    ecdsa::CompressedPubkey pubkey{};
    bool responded = false;
    bool accepted = false;
    uint64_t params_assigned = 0;
    uint64_t params_trained = 0;
    double reported_loss_before = 0.0;
    double reported_loss_after = 0.0;
    double measured_loss_after = 0.0;
    double loss_delta = 0.0;
    double param_component = 0.0;
    double loss_component = 0.0;
    double weight = 0.0;
    Bytes report_bytes;  // canonical encoding of the submitted report
    std::optional<Certificate> contribution_certificate;
};

// The published audit record. Together with the chain dump it lets a third
// party recompute the seed, the weights, the winner, and every certificate
// check without coordinator internals.
struct CycleRecord {
    uint64_t cycle_id = 0;
    double alpha = 0.5;
    bool succeeded = false;
    std::string failure;
    double base_validation_loss = 0.0;
    std::vector<MinerCycleRecord> miners;
    Hash256 lottery_seed{};
    uint32_t winner_id = 0;
    bool winner_responded = false;
    Hash256 certificate_hash{};  // the block certificate
    Hash256 block_hash{};
    uint64_t reward = 0;
};

struct EvaluationOutcome {
    uint32_t winner_id = 0;
    bool winner_responded = false;
    std::optional<Certificate> block_certificate;  // issued when the winner responded
};

struct CycleOutcome {
    CycleRecord record;
    std::optional<Block> block;  // present iff record.succeeded
};

struct ValidationVote {
    uint32_t miner_id = 0;
    bool ok = false;
};

class Coordinator {
public:
    Coordinator(ecdsa::KeyPair server_key, ModelSpec spec, Dataset validation,
                CycleConfig config, uint64_t nonce_seed);

    const ecdsa::PublicKey& server_pubkey() const { return server_key_.pub; }
    ecdsa::CompressedPubkey server_pubkey_compressed() const {
        return server_key_.pub.serialize_compressed();
    }
    const ModelSpec& model_spec() const { return spec_; }
    const CycleConfig& config() const { return config_; }
    const std::vector<double>& base_params() const { return base_params_; }
    void set_base_params(std::vector<double> params);
    CycleState state() const { return state_; }
    uint64_t cycle_id() const { return cycle_id_; }

    // Registration + Distribution. Shards are sized proportionally to the
    // miners' compute budgets; training rows are split evenly. Throws
    // NoRegisteredMiners.
    std::vector<Assignment> begin_cycle(uint64_t cycle_id,
                                        std::span<const RegisteredMiner> miners,
                                        size_t train_rows);

    // Evaluation, Lottery, and Certification. reports[i] belongs to the
    // i-th registered miner; a missing entry means the miner never
    // responded (timeout at the Evaluation boundary). Accepted shards are
    // merged into the base model. Sub-operation errors propagate; nothing
    // is committed until finalize_cycle.
    EvaluationOutcome evaluate_cycle(std::span<const std::optional<TrainingReport>> reports,
                                     OpMeter* meter);

    // Validation + Reward. Appends the block only when the proposal exists
    // and every vote approves; otherwise records a failed cycle and leaves
    // the chain and ledger untouched.
    CycleOutcome finalize_cycle(std::optional<Block> proposed,
                                std::span<const ValidationVote> votes, Chain& chain,
                                std::map<uint32_t, uint64_t>& reward_ledger,
                                OpMeter* meter);

    // Abort from any mid-cycle state; emits the failed record.
    CycleOutcome abort_cycle(const std::string& reason);

private:
    void advance(CycleState from, CycleState to);

    ecdsa::KeyPair server_key_;
    ModelSpec spec_;
    Dataset validation_;
    CycleConfig config_;
    Rng nonce_rng_;
    std::vector<double> base_params_;

    CycleState state_ = CycleState::Complete;
    uint64_t cycle_id_ = 0;
    std::vector<RegisteredMiner> registered_;
    std::vector<Assignment> assignments_;
    std::vector<double> pending_params_;  // base with accepted shards merged
    CycleRecord record_;
    EvaluationOutcome eval_;
};

// The block the winning miner assembles around its certificate.
Block assemble_block(uint64_t cycle_id, const Hash256& prev_hash,
                     std::vector<Bytes> transactions, Certificate certificate,
                     OpMeter* meter = nullptr);

// What every node runs when a proposed block arrives: linkage against its
// view of the tip, Merkle recomputation, certificate binding and signature.
bool agent_validate_block(const Block& block, const Hash256& expected_prev,
                          const ecdsa::PublicKey& server_pub, OpMeter* meter = nullptr);

// Deterministic filler transactions for a cycle.
std::vector<Bytes> make_cycle_transactions(uint64_t cycle_id, Rng& rng);

void distribute_reward(std::map<uint32_t, uint64_t>& ledger, uint32_t winner,
                       uint64_t reward);

// Direct (no message fabric) composition of one full cycle, used by tests
// and by anything that wants the protocol without the discrete-event
// harness. train_fns[i] produces the i-th miner's report plus its training
// FLOP count, or nullopt for no response.
using MinerTrainFn = std::function<std::optional<std::pair<TrainingReport, uint64_t>>(
    const Assignment&, const Dataset& partition)>;

CycleOutcome run_cycle(Coordinator& coordinator, uint64_t cycle_id,
                       std::span<const RegisteredMiner> miners,
                       std::span<const MinerTrainFn> train_fns,
                       const Dataset& train_data, Chain& chain,
                       std::map<uint32_t, uint64_t>& reward_ledger, Rng& tx_rng,
                       OpMeter* meter);

}  // namespace puft
