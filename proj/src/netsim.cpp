// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.
//
// Discrete-event harness. Each cycle is a fixed choreography over the seeded
// message fabric:
//
//   miners --Register--> server          (all enrolled miners, offline too)
//   server --AssignTask--> miners        (shard range, rows, step budget)
//   miners  train                        (parallel; results land in fixed
//                                         slots, so thread count is
//                                         irrelevant to the outcome)
//   miners --SubmitUpdate--> server      (canonical report bytes; offline
//                                         miners stay silent and time out at
//                                         the Evaluation boundary)
//   server --PublishScores--> miners
//   server --AnnounceWinner--> winner    (block certificate + transactions)
//   winner --ProposeBlock--> everyone    (serialized block)
//   miners --ValidationResult--> server  (non-offline validators only)
//
// The queue drains to quiescence between phases; since every latency draw
// comes from the scenario seed, the entire schedule and therefore the chain,
// records, and metrics replay byte-identically.

#include "puft/netsim.hpp"

#include <algorithm>

#include "puft/errors.hpp"
#include "puft/kernels.hpp"
#include "puft/merkle.hpp"
#include "puft/pow.hpp"

namespace puft {

void MessageQueue::send(MsgKind kind, uint32_t sender, uint32_t receiver,
                        Bytes payload, uint64_t send_tick) {
    uint64_t latency = latency_.min_ticks == latency_.max_ticks
                           ? latency_.min_ticks
                           : latency_.min_ticks +
                                 rng_.below(latency_.max_ticks - latency_.min_ticks + 1);
    SimMessage m;
    m.kind = kind;
    m.sender = sender;
    m.receiver = receiver;
    m.payload = std::move(payload);
    m.deliver_at = send_tick + 1 + latency;
    m.seq = next_seq_++;
    pending_.push_back(std::move(m));
}

uint64_t MessageQueue::next_due() const {
    uint64_t best = UINT64_MAX;
    for (const SimMessage& m : pending_) best = std::min(best, m.deliver_at);
    return best;
}

std::vector<SimMessage> deliver_messages(MessageQueue& queue, uint64_t current_tick) {
    std::vector<SimMessage> due;
    auto& pending = queue.pending_;
    for (auto it = pending.begin(); it != pending.end();) {
        if (it->deliver_at <= current_tick) {
            due.push_back(std::move(*it));
            it = pending.erase(it);
        } else {
            ++it;
        }
    }
    std::sort(due.begin(), due.end(), [](const SimMessage& a, const SimMessage& b) {
        if (a.deliver_at != b.deliver_at) return a.deliver_at < b.deliver_at;
        if (a.sender != b.sender) return a.sender < b.sender;
        return a.seq < b.seq;
    });
    return due;
}

namespace {

// --------------------------------------------------------------------------
// payload encodings (internal wire formats of the sim)

Bytes encode_task(const Assignment& a) {
    Bytes out;
    put_u64_be(out, a.shard_range.begin);
    put_u64_be(out, a.shard_range.end);
    put_u64_be(out, a.data_rows.begin);
    put_u64_be(out, a.data_rows.end);
    put_u64_be(out, a.step_budget);
    return out;
}

Bytes encode_winner_payload(const Certificate& cert, const std::vector<Bytes>& txs) {
    Bytes out = cert.serialize();
    put_u32_be(out, uint32_t(txs.size()));
    for (const Bytes& tx : txs) {
        put_u32_be(out, uint32_t(tx.size()));
        put_bytes(out, tx);
    }
    return out;
}

struct WinnerPayload {
    Certificate cert;
    std::vector<Bytes> txs;
};

WinnerPayload decode_winner_payload(ByteSpan payload) {
    WinnerPayload out;
    out.cert = Certificate::deserialize(payload.subspan(0, Certificate::kSerializedBytes));
    size_t pos = Certificate::kSerializedBytes;
    uint32_t ntx = read_u32_be(payload.data() + pos);
    pos += 4;
    for (uint32_t i = 0; i < ntx; ++i) {
        uint32_t len = read_u32_be(payload.data() + pos);
        pos += 4;
        out.txs.emplace_back(payload.begin() + pos, payload.begin() + pos + len);
        pos += len;
    }
    return out;
}

// --------------------------------------------------------------------------
// miner behavior

struct AgentState {
    MinerConfig cfg;
    ecdsa::KeyPair keys;
    Hash256 chain_tip{};
    std::optional<Assignment> task;
};

std::optional<std::pair<TrainingReport, uint64_t>> produce_report(
    Behavior behavior, const ModelSpec& spec, const CycleConfig& cycle_cfg,
    const Assignment& assignment, const Dataset& partition, uint64_t train_seed) {
    if (behavior == Behavior::Offline) return std::nullopt;

    TrainingReport report;
    report.miner_id = assignment.miner_id;
    report.shard.range = assignment.shard_range;

    std::span<const double> issued(assignment.full_params.data() +
                                       assignment.shard_range.begin,
                                   assignment.shard_range.size());

    if (behavior == Behavior::Lazy) {
        // No work at all, plausible-looking claims.
        report.shard.values.assign(issued.begin(), issued.end());
        report.params_trained = assignment.shard_range.size();
        report.loss_before = 0.5;
        report.loss_after = 0.25;
        report.steps_used = assignment.step_budget;
        return std::make_pair(std::move(report), uint64_t(0));
    }

    if (behavior == Behavior::Falsifier) {
        // Random weights sold as a perfect result.
        Rng rng(train_seed);
        report.shard.values.resize(assignment.shard_range.size());
        for (double& v : report.shard.values) v = rng.uniform(-10.0, 10.0);
        report.params_trained = assignment.shard_range.size();
        report.loss_before = 1e6;
        report.loss_after = 0.0;
        report.steps_used = assignment.step_budget;
        return std::make_pair(std::move(report), uint64_t(0));
    }

    // Honest: measure, train the shard, measure again.
    uint64_t flops = 0;
    double before = kernels::mse(spec, assignment.full_params, partition);
    flops += flops_mse(spec, partition.rows);

    SgdParams sgd;
    sgd.steps = assignment.step_budget;
    sgd.learning_rate = cycle_cfg.learning_rate;
    sgd.batch_size = cycle_cfg.batch_size;
    sgd.seed = train_seed;
    SgdResult trained = sgd_train(spec, assignment.full_params, assignment.shard_range,
                                  partition, sgd);
    flops += trained.flops;

    std::vector<double> updated = assignment.full_params;
    std::copy(trained.shard_values.begin(), trained.shard_values.end(),
              updated.begin() + assignment.shard_range.begin);
    double after = kernels::mse(spec, updated, partition);
    flops += flops_mse(spec, partition.rows);

    report.shard.values = std::move(trained.shard_values);
    report.params_trained = assignment.shard_range.size();
    report.loss_before = before;
    report.loss_after = after;
    report.steps_used = trained.steps_used;
    return std::make_pair(std::move(report), flops);
}

}  // namespace

// --------------------------------------------------------------------------

ScenarioResult run_scenario(const ScenarioConfig& config, const ScenarioHooks& hooks) {
    validate_config(config);

    const uint64_t seed = config.seed;
    SyntheticData data = make_synthetic_dataset(derive_seed(seed, {0}),
                                                config.n_examples,
                                                config.model.input_dim, config.noise_std);

    uint8_t key_seed[32];
    Rng server_key_rng(derive_seed(seed, {1}));
    server_key_rng.fill(key_seed);
    ecdsa::KeyPair server_key = ecdsa::generate_keypair(ByteSpan(key_seed, 32));

    std::vector<AgentState> agents(config.miners.size());
    std::vector<RegisteredMiner> roster;
    for (size_t i = 0; i < config.miners.size(); ++i) {
        agents[i].cfg = config.miners[i];
        Rng key_rng(derive_seed(seed, {2, i}));
        key_rng.fill(key_seed);
        agents[i].keys = ecdsa::generate_keypair(ByteSpan(key_seed, 32));

        RegisteredMiner m;
        m.miner_id = uint32_t(i);
        m.pubkey = agents[i].keys.pub.serialize_compressed();
        m.compute_budget = config.miners[i].compute_budget;
        m.label = behavior_name(config.miners[i].behavior);
        roster.push_back(std::move(m));
    }

    Coordinator coordinator(server_key, config.model, data.validation, config.cycle,
                            derive_seed(seed, {4}));
    {
        Rng init_rng(derive_seed(seed, {8}));
        std::vector<double> init(config.model.parameter_count());
        for (double& v : init) v = init_rng.uniform(-0.5, 0.5);
        coordinator.set_base_params(std::move(init));
    }

    MessageQueue queue(derive_seed(seed, {3}), config.latency);
    Rng tx_rng(derive_seed(seed, {5}));

    ScenarioResult result;
    result.server_pubkey = server_key.pub.serialize_compressed();
    OpMeter meter;
    uint64_t clock = 0;

    for (uint64_t cycle = 0; cycle < config.cycles; ++cycle) {
        // cycle-local mail collected by the server
        std::vector<std::optional<TrainingReport>> reports(agents.size());
        std::vector<uint64_t> training_flops(agents.size(), 0);
        std::vector<ValidationVote> votes;
        std::optional<Block> proposed;
        std::vector<Bytes> cycle_txs = make_cycle_transactions(cycle, tx_rng);

        auto handle = [&](const SimMessage& msg) {
            switch (msg.kind) {
                case MsgKind::Register:
                    break;  // roster is fixed; registration is the enrollment signal
                case MsgKind::AssignTask: {
                    AgentState& agent = agents[msg.receiver];
                    Assignment a;
                    a.miner_id = msg.receiver;
                    a.shard_range.begin = read_u64_be(msg.payload.data());
                    a.shard_range.end = read_u64_be(msg.payload.data() + 8);
                    a.data_rows.begin = read_u64_be(msg.payload.data() + 16);
                    a.data_rows.end = read_u64_be(msg.payload.data() + 24);
                    a.step_budget = read_u64_be(msg.payload.data() + 32);
                    a.full_params = coordinator.base_params();  // model download
                    agent.task = std::move(a);
                    break;
                }
                case MsgKind::SubmitUpdate:
                    reports[msg.sender] = TrainingReport::from_canonical(msg.payload);
                    break;
                case MsgKind::PublishScores:
                    break;  // informational
                case MsgKind::AnnounceWinner: {
                    // The winner assembles and broadcasts the block.
                    AgentState& agent = agents[msg.receiver];
                    WinnerPayload wp = decode_winner_payload(msg.payload);
                    Block block = assemble_block(cycle, agent.chain_tip, wp.txs, wp.cert,
                                                 &meter);
                    if (hooks.corrupt_block) hooks.corrupt_block(cycle, block);
                    Bytes bytes = block.serialize();
                    for (size_t i = 0; i < agents.size(); ++i)
                        queue.send(MsgKind::ProposeBlock, msg.receiver, uint32_t(i),
                                   bytes, msg.deliver_at);
                    queue.send(MsgKind::ProposeBlock, msg.receiver, kServerAddr,
                               std::move(bytes), msg.deliver_at);
                    break;
                }
                case MsgKind::ProposeBlock: {
                    Block block = Block::deserialize(msg.payload);
                    if (msg.receiver == kServerAddr) {
                        proposed = std::move(block);
                        break;
                    }
                    AgentState& agent = agents[msg.receiver];
                    if (agent.cfg.behavior == Behavior::Offline) break;
                    bool ok = agent_validate_block(block, agent.chain_tip,
                                                   server_key.pub, &meter);
                    Bytes vote(1, ok ? 1 : 0);
                    queue.send(MsgKind::ValidationResult, msg.receiver, kServerAddr,
                               std::move(vote), msg.deliver_at);
                    break;
                }
                case MsgKind::ValidationResult:
                    votes.push_back(ValidationVote{msg.sender, msg.payload[0] == 1});
                    break;
            }
        };

        auto drain = [&]() {
            while (!queue.empty()) {
                clock = std::max(clock, queue.next_due());
                for (const SimMessage& msg : deliver_messages(queue, clock)) handle(msg);
            }
        };

        try {
            // Registration
            for (size_t i = 0; i < agents.size(); ++i)
                queue.send(MsgKind::Register, uint32_t(i), kServerAddr, {}, clock);
            drain();

            // Distribution
            std::vector<Assignment> assignments =
                coordinator.begin_cycle(cycle, roster, data.train.rows);
            for (const Assignment& a : assignments)
                queue.send(MsgKind::AssignTask, kServerAddr, a.miner_id, encode_task(a),
                           clock);
            drain();

            // Training: pure per-miner work, parallel across miners; results
            // land in per-miner slots so scheduling cannot reorder anything.
            std::vector<std::optional<std::pair<TrainingReport, uint64_t>>> produced(
                agents.size());
#pragma omp parallel for schedule(dynamic)
            for (int64_t i = 0; i < int64_t(agents.size()); ++i) {
                AgentState& agent = agents[size_t(i)];
                if (!agent.task) continue;
                Dataset partition = data.train.slice(agent.task->data_rows.begin,
                                                     agent.task->data_rows.end);
                produced[size_t(i)] = produce_report(
                    agent.cfg.behavior, config.model, config.cycle, *agent.task,
                    partition, derive_seed(seed, {6, cycle, uint64_t(i)}));
            }
            for (size_t i = 0; i < agents.size(); ++i) {
                agents[i].task.reset();
                if (!produced[i]) continue;
                training_flops[i] = produced[i]->second;
                queue.send(MsgKind::SubmitUpdate, uint32_t(i), kServerAddr,
                           produced[i]->first.canonical_bytes(), clock);
            }
            drain();

            // Evaluation through Certification (missing reports timed out)
            EvaluationOutcome eval = coordinator.evaluate_cycle(reports, &meter);
            for (size_t i = 0; i < agents.size(); ++i)
                queue.send(MsgKind::PublishScores, kServerAddr, uint32_t(i), Bytes{},
                           clock);
            if (eval.winner_responded && eval.block_certificate) {
                queue.send(MsgKind::AnnounceWinner, kServerAddr, eval.winner_id,
                           encode_winner_payload(*eval.block_certificate, cycle_txs),
                           clock);
            }
            drain();

            // Validation + Reward
            CycleOutcome outcome = coordinator.finalize_cycle(
                std::move(proposed), votes, result.chain, result.reward_ledger, &meter);
            for (size_t i = 0; i < agents.size(); ++i)
                if (outcome.record.miners[i].accepted) meter_flops(&meter, training_flops[i]);
            if (outcome.record.succeeded) {
                Hash256 tip = result.chain.tip_hash();
                for (AgentState& agent : agents)
                    if (agent.cfg.behavior != Behavior::Offline) agent.chain_tip = tip;
            }
            result.records.push_back(std::move(outcome.record));
        } catch (const Error& e) {
            result.records.push_back(coordinator.abort_cycle(e.what()).record);
        }

        result.per_cycle.push_back(MetricSnapshot{meter.hash_ops, meter.training_flops});
        clock += 1;
    }

    result.metric.hash_ops = meter.hash_ops;
    result.metric.training_flops = meter.training_flops;
    result.metric.per_hash_op_cost = config.per_hash_op_cost;
    result.final_params = coordinator.base_params();
    return result;
}

BaselineResult run_baseline_pow(const ScenarioConfig& config) {
    validate_config(config);
    PowTarget target = PowTarget::from_difficulty_bits(config.pow_baseline.difficulty_bits);
    Rng tx_rng(derive_seed(config.seed, {9}));
    OpMeter meter;
    BaselineResult result;

    for (uint64_t cycle = 0; cycle < config.cycles; ++cycle) {
        std::vector<Bytes> txs = make_cycle_transactions(cycle, tx_rng);
        BlockHeader header;
        header.version = 1;
        header.prev_hash = result.chain.tip_hash();
        header.merkle_root = merkle_root(txs, &meter);
        header.timestamp = cycle;
        header.proof_kind = ProofKind::PowNonce;

        try {
            MineResult mined =
                pow_mine(header, target, config.pow_baseline.max_attempts, &meter);
            header.nonce = mined.nonce;
            Block block;
            block.header = header;
            block.transactions = txs;
            append_block(result.chain, std::move(block), ByteSpan{}, target, &meter);
            result.attempts_per_block.push_back(mined.attempts);
        } catch (const Error&) {
            ++result.failed_cycles;
        }
        result.per_cycle.push_back(MetricSnapshot{meter.hash_ops, meter.training_flops});
    }

    result.metric.hash_ops = meter.hash_ops;
    result.metric.training_flops = meter.training_flops;
    result.metric.per_hash_op_cost = config.per_hash_op_cost;
    return result;
}

ComparisonReport compare_usefulness(const ScenarioResult& training,
                                    const BaselineResult& baseline) {
    if (training.chain.height() != baseline.chain.height())
        raise(Errc::HeightMismatch, "chains must be the same height to compare");
    ComparisonReport report;
    report.training_useful_fraction = training.metric.useful_fraction();
    report.baseline_useful_fraction = baseline.metric.useful_fraction();
    report.difference =
        report.training_useful_fraction - report.baseline_useful_fraction;
    report.chain_height = training.chain.height();
    return report;
}

}  // namespace puft
