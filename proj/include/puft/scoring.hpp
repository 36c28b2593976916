// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <span>
#include <vector>

#include "puft/dataset.hpp"
#include "puft/training.hpp"

namespace puft {

struct RawContribution {
    uint32_t miner_id = 0;
    uint64_t params_trained = 0;
    double loss_delta = 0.0;  // max(0, loss_before - measured_loss_after)
};

struct ContributionScore {
    uint32_t miner_id = 0;
    double param_component = 0.0;  // p_i / sum(p), 0 when sum is 0
    double loss_component = 0.0;   // delta_i / sum(delta), 0 when sum is 0
    double weight = 0.0;           // in [0, 1]; weights sum to 1
};

// weight_i proportional to alpha * param_component_i +
// (1 - alpha) * loss_component_i, renormalized so the weights sum to exactly
// one whenever any raw contribution is positive (when one metric is
// degenerate the other carries the full mass). If every contribution is
// zero the lottery is uniform over the listed miners.
std::vector<ContributionScore> score_contribution(std::span<const RawContribution> metrics,
                                                  double alpha);

struct ReportEvaluation {
    bool accepted = false;
    // Server-side validation loss of base params with the submitted shard
    // applied; +inf when the assembled model overflows. This measurement
    // replaces the miner's self-reported loss_after everywhere downstream.
    double measured_loss_after = 0.0;
    uint64_t eval_flops = 0;
};

// Re-measures the submitted shard on held-out data. accepted requires the
// shard to differ from the issued values (no-work detection) and the
// measured loss to be finite. Throws ShardRangeMismatch when the report's
// range is not the assigned one.
ReportEvaluation evaluate_report(const TrainingReport& report, const ModelSpec& spec,
                                 std::span<const double> base_params,
                                 IndexRange assigned_range,
                                 std::span<const double> issued_values,
                                 const Dataset& validation);

}  // namespace puft
