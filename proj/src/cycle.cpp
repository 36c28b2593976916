// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/cycle.hpp"

#include <algorithm>
#include <cmath>

#include "puft/errors.hpp"
#include "puft/kernels.hpp"
#include "puft/merkle.hpp"

namespace puft {

const char* cycle_state_name(CycleState s) {
    switch (s) {
        case CycleState::Registration: return "Registration";
        case CycleState::Distribution: return "Distribution";
        case CycleState::Training: return "Training";
        case CycleState::Evaluation: return "Evaluation";
        case CycleState::Lottery: return "Lottery";
        case CycleState::Certification: return "Certification";
        case CycleState::BlockProposal: return "BlockProposal";
        case CycleState::Validation: return "Validation";
        case CycleState::Reward: return "Reward";
        case CycleState::Complete: return "Complete";
    }
    return "?";
}

Coordinator::Coordinator(ecdsa::KeyPair server_key, ModelSpec spec, Dataset validation,
                         CycleConfig config, uint64_t nonce_seed)
    : server_key_(std::move(server_key)),
      spec_(spec),
      validation_(std::move(validation)),
      config_(config),
      nonce_rng_(nonce_seed),
      base_params_(spec.parameter_count(), 0.0) {
    if (config_.alpha < 0.0 || config_.alpha > 1.0)
        raise(Errc::ConfigInvalid, "alpha must be in [0,1]");
}

void Coordinator::set_base_params(std::vector<double> params) {
    if (params.size() != spec_.parameter_count())
        raise(Errc::ValidationError, "parameter vector length does not match model");
    base_params_ = std::move(params);
}

void Coordinator::advance(CycleState from, CycleState to) {
    if (state_ != from)
        raise(Errc::ValidationError,
              std::string("cycle state is ") + cycle_state_name(state_) + ", expected " +
                  cycle_state_name(from));
    state_ = to;
}

std::vector<Assignment> Coordinator::begin_cycle(uint64_t cycle_id,
                                                 std::span<const RegisteredMiner> miners,
                                                 size_t train_rows) {
    if (state_ != CycleState::Complete)
        raise(Errc::ValidationError, "previous cycle still in progress");
    if (miners.empty()) raise(Errc::NoRegisteredMiners, "no miners registered this cycle");

    state_ = CycleState::Registration;
    cycle_id_ = cycle_id;
    registered_.assign(miners.begin(), miners.end());
    record_ = CycleRecord{};
    record_.cycle_id = cycle_id;
    record_.alpha = config_.alpha;
    eval_ = EvaluationOutcome{};

    advance(CycleState::Registration, CycleState::Distribution);

    std::vector<double> budgets;
    budgets.reserve(registered_.size());
    for (const RegisteredMiner& m : registered_) budgets.push_back(m.compute_budget);
    std::vector<IndexRange> shards =
        partition_weighted(spec_.parameter_count(), budgets);
    std::vector<IndexRange> rows = partition_range(train_rows, registered_.size());

    assignments_.clear();
    for (size_t i = 0; i < registered_.size(); ++i) {
        Assignment a;
        a.miner_id = registered_[i].miner_id;
        a.shard_range = shards[i];
        a.full_params = base_params_;
        a.data_rows = rows[i];
        a.step_budget = uint64_t(std::llround(double(config_.cycle_steps) *
                                              registered_[i].compute_budget));
        assignments_.push_back(std::move(a));
    }

    advance(CycleState::Distribution, CycleState::Training);
    return assignments_;
}

EvaluationOutcome Coordinator::evaluate_cycle(
    std::span<const std::optional<TrainingReport>> reports, OpMeter* meter) {
    advance(CycleState::Training, CycleState::Evaluation);
    if (reports.size() != registered_.size())
        raise(Errc::ValidationError, "one report slot per registered miner required");

    double base_loss = kernels::mse(spec_, base_params_, validation_);
    record_.base_validation_loss = base_loss;

    std::vector<RawContribution> raw;
    std::vector<const TrainingReport*> accepted_reports;
    std::vector<ParameterShard> accepted_shards;
    uint64_t eval_flops = 0;
    bool any_accepted = false;

    record_.miners.clear();
    for (size_t i = 0; i < registered_.size(); ++i) {
        const RegisteredMiner& miner = registered_[i];
        const Assignment& assignment = assignments_[i];
        MinerCycleRecord mrec;
        mrec.miner_id = miner.miner_id;
        mrec.label = miner.label;
        mrec.pubkey = miner.pubkey;
        mrec.params_assigned = assignment.shard_range.size();

        RawContribution contribution;
        contribution.miner_id = miner.miner_id;

        if (reports[i].has_value()) {
            const TrainingReport& report = *reports[i];
            std::span<const double> issued(assignment.full_params.data() +
                                               assignment.shard_range.begin,
                                           assignment.shard_range.size());
            ReportEvaluation eval = evaluate_report(report, spec_, base_params_,
                                                    assignment.shard_range, issued,
                                                    validation_);
            mrec.responded = true;
            mrec.accepted = eval.accepted;
            mrec.reported_loss_before = report.loss_before;
            mrec.reported_loss_after = report.loss_after;
            mrec.measured_loss_after = eval.measured_loss_after;
            mrec.report_bytes = report.canonical_bytes();
            // All-or-nothing parameter credit; loss credit only for a
            // measured improvement, never for the miner's claim.
            if (eval.accepted) {
                eval_flops += eval.eval_flops;
                any_accepted = true;
                mrec.params_trained = assignment.shard_range.size();
                mrec.loss_delta = std::max(0.0, base_loss - eval.measured_loss_after);
                accepted_reports.push_back(&*reports[i]);
                accepted_shards.push_back(report.shard);
            }
            contribution.params_trained = mrec.params_trained;
            contribution.loss_delta = mrec.loss_delta;
        }

        raw.push_back(contribution);
        record_.miners.push_back(std::move(mrec));
    }
    if (any_accepted) meter_flops(meter, eval_flops + flops_mse(spec_, validation_.rows));

    std::vector<ContributionScore> scores = score_contribution(raw, config_.alpha);
    for (size_t i = 0; i < scores.size(); ++i) {
        record_.miners[i].param_component = scores[i].param_component;
        record_.miners[i].loss_component = scores[i].loss_component;
        record_.miners[i].weight = scores[i].weight;
    }

    advance(CycleState::Evaluation, CycleState::Lottery);

    std::vector<TrainingReport> seed_reports;
    seed_reports.reserve(accepted_reports.size());
    for (const TrainingReport* r : accepted_reports) seed_reports.push_back(*r);
    std::sort(seed_reports.begin(), seed_reports.end(),
              [](const TrainingReport& a, const TrainingReport& b) {
                  return a.miner_id < b.miner_id;
              });
    record_.lottery_seed = lottery_seed(cycle_id_, seed_reports, meter);

    std::vector<double> weights;
    weights.reserve(scores.size());
    for (const ContributionScore& s : scores) weights.push_back(s.weight);
    size_t winner_index = weighted_lottery(weights, record_.lottery_seed);
    eval_.winner_id = registered_[winner_index].miner_id;
    eval_.winner_responded = record_.miners[winner_index].responded;
    record_.winner_id = eval_.winner_id;
    record_.winner_responded = eval_.winner_responded;

    advance(CycleState::Lottery, CycleState::Certification);

    // Contribution certificates for every responder; the winner additionally
    // receives the exclusive block certificate embedded in the header.
    for (size_t i = 0; i < registered_.size(); ++i) {
        MinerCycleRecord& mrec = record_.miners[i];
        if (!mrec.responded) continue;
        std::array<uint8_t, 16> nonce;
        nonce_rng_.fill(nonce);
        double after = std::isfinite(mrec.measured_loss_after) ? mrec.measured_loss_after
                                                               : record_.base_validation_loss;
        mrec.contribution_certificate =
            issue_certificate(server_key_, mrec.pubkey, cycle_id_, mrec.params_trained,
                              record_.base_validation_loss, after, cycle_id_, nonce);
    }
    if (eval_.winner_responded) {
        const MinerCycleRecord& w = record_.miners[winner_index];
        std::array<uint8_t, 16> nonce;
        nonce_rng_.fill(nonce);
        double after = std::isfinite(w.measured_loss_after) ? w.measured_loss_after
                                                            : record_.base_validation_loss;
        eval_.block_certificate =
            issue_certificate(server_key_, w.pubkey, cycle_id_, w.params_trained,
                              record_.base_validation_loss, after, cycle_id_, nonce);
        record_.certificate_hash = eval_.block_certificate->hash(meter);
    }

    // Stage the merge of accepted shards; committed at finalize.
    pending_params_ = assemble_model(base_params_, accepted_shards);

    advance(CycleState::Certification, CycleState::BlockProposal);
    return eval_;
}

CycleOutcome Coordinator::finalize_cycle(std::optional<Block> proposed,
                                         std::span<const ValidationVote> votes,
                                         Chain& chain,
                                         std::map<uint32_t, uint64_t>& reward_ledger,
                                         OpMeter* meter) {
    advance(CycleState::BlockProposal, CycleState::Validation);

    auto fail = [&](const std::string& reason) {
        record_.succeeded = false;
        record_.failure = reason;
        state_ = CycleState::Complete;
        CycleOutcome out;
        out.record = record_;
        record_ = CycleRecord{};
        return out;
    };

    if (!eval_.winner_responded || !proposed.has_value())
        return fail("lottery winner unavailable for block proposal");
    for (const ValidationVote& vote : votes) {
        if (!vote.ok) return fail("validator " + std::to_string(vote.miner_id) +
                                  " rejected the proposed block");
    }

    advance(CycleState::Validation, CycleState::Reward);
    ecdsa::CompressedPubkey pub33 = server_pubkey_compressed();
    try {
        append_block(chain, *proposed, ByteSpan(pub33.data(), pub33.size()),
                     PowTarget{}, meter);
    } catch (const Error& e) {
        return fail(std::string("block rejected at append: ") + e.what());
    }

    record_.block_hash = chain.blocks.back().header.hash(meter);
    record_.succeeded = true;
    record_.reward = config_.reward;
    distribute_reward(reward_ledger, eval_.winner_id, config_.reward);
    base_params_ = pending_params_;

    state_ = CycleState::Complete;
    CycleOutcome out;
    out.record = record_;
    out.block = std::move(proposed);
    record_ = CycleRecord{};
    return out;
}

CycleOutcome Coordinator::abort_cycle(const std::string& reason) {
    record_.succeeded = false;
    record_.failure = reason;
    state_ = CycleState::Complete;
    CycleOutcome out;
    out.record = record_;
    record_ = CycleRecord{};
    return out;
}

Block assemble_block(uint64_t cycle_id, const Hash256& prev_hash,
                     std::vector<Bytes> transactions, Certificate certificate,
                     OpMeter* meter) {
    Block block;
    block.header.version = 1;
    block.header.prev_hash = prev_hash;
    block.header.merkle_root = merkle_root(transactions, meter);
    block.header.timestamp = cycle_id;
    block.header.proof_kind = ProofKind::TrainingCertificate;
    block.header.nonce = 0;
    block.header.certificate_hash = certificate.hash(meter);
    block.transactions = std::move(transactions);
    block.certificate = std::move(certificate);
    return block;
}

bool agent_validate_block(const Block& block, const Hash256& expected_prev,
                          const ecdsa::PublicKey& server_pub, OpMeter* meter) {
    if (block.header.prev_hash != expected_prev) return false;
    if (block.transactions.empty()) return false;
    if (merkle_root(block.transactions, meter) != block.header.merkle_root) return false;
    if (block.header.proof_kind != ProofKind::TrainingCertificate) return false;
    if (block.header.nonce != 0) return false;
    if (!block.certificate.has_value()) return false;
    if (block.certificate->hash(meter) != block.header.certificate_hash) return false;
    return verify_certificate(server_pub, *block.certificate);
}

std::vector<Bytes> make_cycle_transactions(uint64_t cycle_id, Rng& rng) {
    std::vector<Bytes> txs;
    Bytes coinbase;
    std::string tag = "cycle:" + std::to_string(cycle_id);
    coinbase.assign(tag.begin(), tag.end());
    txs.push_back(std::move(coinbase));
    size_t extra = 1 + size_t(rng.below(3));
    for (size_t i = 0; i < extra; ++i) {
        Bytes tx(32);
        rng.fill(tx);
        txs.push_back(std::move(tx));
    }
    return txs;
}

void distribute_reward(std::map<uint32_t, uint64_t>& ledger, uint32_t winner,
                       uint64_t reward) {
    ledger[winner] += reward;
}

CycleOutcome run_cycle(Coordinator& coordinator, uint64_t cycle_id,
                       std::span<const RegisteredMiner> miners,
                       std::span<const MinerTrainFn> train_fns,
                       const Dataset& train_data, Chain& chain,
                       std::map<uint32_t, uint64_t>& reward_ledger, Rng& tx_rng,
                       OpMeter* meter) {
    std::vector<Assignment> assignments =
        coordinator.begin_cycle(cycle_id, miners, train_data.rows);

    // Miner-side training cost counts toward the metric only once the server
    // accepts the contribution, so it is stashed until evaluation.
    std::vector<std::optional<TrainingReport>> reports(miners.size());
    std::vector<uint64_t> training_flops(miners.size(), 0);
    for (size_t i = 0; i < miners.size(); ++i) {
        Dataset partition =
            train_data.slice(assignments[i].data_rows.begin, assignments[i].data_rows.end);
        auto produced = train_fns[i](assignments[i], partition);
        if (produced) {
            reports[i] = std::move(produced->first);
            training_flops[i] = produced->second;
        }
    }

    EvaluationOutcome eval = coordinator.evaluate_cycle(reports, meter);

    std::optional<Block> proposed;
    if (eval.winner_responded && eval.block_certificate) {
        proposed = assemble_block(cycle_id, chain.tip_hash(),
                                  make_cycle_transactions(cycle_id, tx_rng),
                                  *eval.block_certificate, meter);
    }

    std::vector<ValidationVote> votes;
    if (proposed) {
        for (const RegisteredMiner& m : miners) {
            ValidationVote v;
            v.miner_id = m.miner_id;
            v.ok = agent_validate_block(*proposed, chain.tip_hash(),
                                        coordinator.server_pubkey(), meter);
            votes.push_back(v);
        }
    }

    CycleOutcome outcome = coordinator.finalize_cycle(std::move(proposed), votes, chain,
                                                      reward_ledger, meter);
    for (size_t i = 0; i < outcome.record.miners.size(); ++i)
        if (outcome.record.miners[i].accepted) meter_flops(meter, training_flops[i]);
    return outcome;
}

}  // namespace puft
