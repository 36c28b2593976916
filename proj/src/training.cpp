// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "puft/errors.hpp"
#include "puft/kernels.hpp"
#include "puft/rng.hpp"

namespace puft {

Bytes TrainingReport::canonical_bytes() const {
    Bytes out;
    out.reserve(4 + 16 + shard.values.size() * 8 + 32);
    put_u32_be(out, miner_id);
    put_u64_be(out, shard.range.begin);
    put_u64_be(out, shard.range.end);
    for (double v : shard.values) put_f64_be(out, v);
    put_u64_be(out, params_trained);
    put_f64_be(out, loss_before);
    put_f64_be(out, loss_after);
    put_u64_be(out, steps_used);
    return out;
}

TrainingReport TrainingReport::from_canonical(ByteSpan bytes) {
    constexpr size_t kFixed = 4 + 8 + 8 + 8 + 8 + 8 + 8;
    if (bytes.size() < kFixed || (bytes.size() - kFixed) % 8 != 0)
        raise(Errc::ParseError, "malformed training report");
    const uint8_t* p = bytes.data();
    TrainingReport r;
    r.miner_id = read_u32_be(p);
    r.shard.range.begin = read_u64_be(p + 4);
    r.shard.range.end = read_u64_be(p + 12);
    size_t n_values = (bytes.size() - kFixed) / 8;
    if (r.shard.range.begin > r.shard.range.end ||
        r.shard.range.size() != n_values)
        raise(Errc::ParseError, "report value count does not match range");
    size_t pos = 20;
    r.shard.values.resize(n_values);
    for (size_t i = 0; i < n_values; ++i, pos += 8)
        r.shard.values[i] = read_f64_be(p + pos);
    r.params_trained = read_u64_be(p + pos);
    r.loss_before = read_f64_be(p + pos + 8);
    r.loss_after = read_f64_be(p + pos + 16);
    r.steps_used = read_u64_be(p + pos + 24);
    return r;
}

std::vector<IndexRange> partition_range(size_t total, size_t k) {
    if (k < 1) raise(Errc::ConfigInvalid, "need at least one partition");
    if (k > total) raise(Errc::TooManyMiners, "more partitions than elements");
    std::vector<IndexRange> out;
    out.reserve(k);
    size_t base = total / k, extra = total % k, cursor = 0;
    for (size_t i = 0; i < k; ++i) {
        size_t len = base + (i < extra ? 1 : 0);
        out.push_back(IndexRange{cursor, cursor + len});
        cursor += len;
    }
    return out;
}

std::vector<IndexRange> partition_weighted(size_t total, std::span<const double> weights) {
    size_t k = weights.size();
    if (k < 1) raise(Errc::ConfigInvalid, "need at least one partition");
    if (k > total) raise(Errc::TooManyMiners, "more partitions than elements");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            raise(Errc::ValidationError, "partition weights must be finite and >= 0");
        sum += w;
    }

    std::vector<size_t> sizes(k);
    if (sum == 0.0) {
        auto eq = partition_range(total, k);
        return eq;
    }

    // Largest-remainder apportionment; ties broken by index.
    std::vector<double> remainder(k);
    size_t assigned = 0;
    for (size_t i = 0; i < k; ++i) {
        double ideal = double(total) * (weights[i] / sum);
        sizes[i] = size_t(ideal);
        remainder[i] = ideal - double(sizes[i]);
        assigned += sizes[i];
    }
    std::vector<size_t> order(k);
    std::iota(order.begin(), order.end(), size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return remainder[a] > remainder[b]; });
    for (size_t i = 0; assigned < total; ++i) {
        ++sizes[order[i % k]];
        ++assigned;
    }
    // Every miner keeps at least one parameter; steal from the largest.
    for (size_t i = 0; i < k; ++i) {
        while (sizes[i] == 0) {
            size_t donor = std::max_element(sizes.begin(), sizes.end()) - sizes.begin();
            if (sizes[donor] <= 1) raise(Errc::TooManyMiners, "cannot give every miner a parameter");
            --sizes[donor];
            ++sizes[i];
        }
    }

    std::vector<IndexRange> out;
    out.reserve(k);
    size_t cursor = 0;
    for (size_t len : sizes) {
        out.push_back(IndexRange{cursor, cursor + len});
        cursor += len;
    }
    return out;
}

SgdResult sgd_train(const ModelSpec& spec, std::span<const double> full_params,
                    IndexRange shard_range, const Dataset& partition,
                    const SgdParams& params) {
    if (full_params.size() != spec.parameter_count())
        raise(Errc::ValidationError, "parameter vector length does not match model");
    if (shard_range.end > full_params.size() || shard_range.begin >= shard_range.end)
        raise(Errc::ValidationError, "shard range outside parameter vector");
    if (params.batch_size < 1) raise(Errc::ValidationError, "batch_size must be >= 1");
    if (params.learning_rate < 0.0)
        raise(Errc::ValidationError, "learning_rate must be >= 0");

    std::vector<double> work(full_params.begin(), full_params.end());
    size_t len = shard_range.size();
    std::vector<double> grad(len);
    std::vector<double> previous(len);
    Rng rng(params.seed);

    const bool full_batch = params.batch_size >= partition.rows;
    std::vector<uint32_t> batch;
    if (full_batch) {
        batch.resize(partition.rows);
        std::iota(batch.begin(), batch.end(), uint32_t(0));
    } else {
        batch.resize(params.batch_size);
    }

    SgdResult result;
    for (uint64_t step = 0; step < params.steps; ++step) {
        if (!full_batch)
            for (auto& idx : batch) idx = uint32_t(rng.below(partition.rows));

        kernels::mse_gradient(spec, work, partition, batch, shard_range, grad);
        std::copy(work.begin() + shard_range.begin, work.begin() + shard_range.end,
                  previous.begin());
        bool finite = true;
        for (size_t i = 0; i < len; ++i) {
            double v = work[shard_range.begin + i] - params.learning_rate * grad[i];
            work[shard_range.begin + i] = v;
            finite = finite && std::isfinite(v);
        }
        result.flops += flops_gradient(spec, batch.size(), shard_range) + flops_update(len);
        if (!finite) {
            std::copy(previous.begin(), previous.end(), work.begin() + shard_range.begin);
            result.diverged = true;
            break;
        }
        ++result.steps_used;
    }

    result.shard_values.assign(work.begin() + shard_range.begin,
                               work.begin() + shard_range.end);
    return result;
}

std::vector<double> assemble_model(std::span<const double> base,
                                   std::span<const ParameterShard> shards) {
    for (size_t i = 0; i < shards.size(); ++i) {
        const IndexRange& a = shards[i].range;
        if (a.end > base.size() || a.begin > a.end)
            raise(Errc::ValidationError, "shard range outside parameter vector");
        if (shards[i].values.size() != a.size())
            raise(Errc::ValidationError, "shard value count does not match range");
        for (size_t j = i + 1; j < shards.size(); ++j) {
            const IndexRange& b = shards[j].range;
            if (a.begin < b.end && b.begin < a.end)
                raise(Errc::OverlappingShards, "shard ranges intersect");
        }
    }
    std::vector<double> out(base.begin(), base.end());
    for (const ParameterShard& shard : shards)
        std::copy(shard.values.begin(), shard.values.end(), out.begin() + shard.range.begin);
    return out;
}

}  // namespace puft
