// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/scoring.hpp"

#include <cmath>

#include "puft/errors.hpp"
#include "puft/kernels.hpp"

namespace puft {

std::vector<ContributionScore> score_contribution(std::span<const RawContribution> metrics,
                                                  double alpha) {
    if (alpha < 0.0 || alpha > 1.0) raise(Errc::ValidationError, "alpha must be in [0,1]");
    std::vector<ContributionScore> scores;
    scores.reserve(metrics.size());

    double param_sum = 0.0, delta_sum = 0.0;
    for (const RawContribution& m : metrics) {
        if (m.loss_delta < 0.0 || !std::isfinite(m.loss_delta))
            raise(Errc::ValidationError, "loss deltas must be clipped to [0, inf)");
        param_sum += double(m.params_trained);
        delta_sum += m.loss_delta;
    }

    double raw_total = 0.0;
    for (const RawContribution& m : metrics) {
        ContributionScore s;
        s.miner_id = m.miner_id;
        s.param_component = param_sum > 0.0 ? double(m.params_trained) / param_sum : 0.0;
        s.loss_component = delta_sum > 0.0 ? m.loss_delta / delta_sum : 0.0;
        s.weight = alpha * s.param_component + (1.0 - alpha) * s.loss_component;
        raw_total += s.weight;
        scores.push_back(s);
    }

    if (raw_total > 0.0) {
        for (ContributionScore& s : scores) s.weight /= raw_total;
    } else if (!scores.empty()) {
        // Degenerate cycle: nobody contributed anything; keep liveness with a
        // uniform draw over the registered miners.
        double uniform = 1.0 / double(scores.size());
        for (ContributionScore& s : scores) s.weight = uniform;
    }
    return scores;
}

ReportEvaluation evaluate_report(const TrainingReport& report, const ModelSpec& spec,
                                 std::span<const double> base_params,
                                 IndexRange assigned_range,
                                 std::span<const double> issued_values,
                                 const Dataset& validation) {
    if (!(report.shard.range == assigned_range))
        raise(Errc::ShardRangeMismatch, "report range differs from assignment");
    if (report.shard.values.size() != assigned_range.size())
        raise(Errc::ShardRangeMismatch, "shard value count differs from assignment");

    bool changed = false;
    for (size_t i = 0; i < issued_values.size() && !changed; ++i)
        changed = (report.shard.values[i] != issued_values[i]);

    std::vector<double> assembled(base_params.begin(), base_params.end());
    std::copy(report.shard.values.begin(), report.shard.values.end(),
              assembled.begin() + assigned_range.begin);
    double measured = kernels::mse(spec, assembled, validation);

    ReportEvaluation eval;
    eval.eval_flops = flops_mse(spec, validation.rows);
    if (!std::isfinite(measured)) {
        eval.accepted = false;
        eval.measured_loss_after = std::numeric_limits<double>::infinity();
    } else {
        eval.accepted = changed;
        eval.measured_loss_after = measured;
    }
    return eval;
}

}  // namespace puft
