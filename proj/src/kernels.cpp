// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/kernels.hpp"

#include <cmath>
#include <vector>

#include "puft/errors.hpp"

namespace puft {

namespace {

// Forward pass for one row; for TwoLayer the activations are written to
// `hidden` (length h) when non-null.
double predict(const ModelSpec& spec, std::span<const double> params,
               const double* x, double* hidden) {
    size_t d = spec.input_dim;
    if (spec.arch == Architecture::Linear) {
        double acc = 0.0;
        for (size_t j = 0; j < d; ++j) acc += params[j] * x[j];
        return acc + params[d];
    }
    size_t h = spec.hidden_width;
    const double* w1 = params.data() + spec.w1_offset();
    const double* b1 = params.data() + spec.b1_offset();
    const double* w2 = params.data() + spec.w2_offset();
    double out = params[spec.b2_offset()];
    for (size_t j = 0; j < h; ++j) {
        double z = b1[j];
        const double* row = w1 + j * d;
        for (size_t i = 0; i < d; ++i) z += row[i] * x[i];
        double a = std::tanh(z);
        if (hidden) hidden[j] = a;
        out += w2[j] * a;
    }
    return out;
}

double chunk_loss(const ModelSpec& spec, std::span<const double> params,
                  const Dataset& data, size_t row_begin, size_t row_end,
                  std::vector<double>& hidden) {
    double acc = 0.0;
    double* hptr = hidden.empty() ? nullptr : hidden.data();
    for (size_t i = row_begin; i < row_end; ++i) {
        double res = predict(spec, params, data.row(i), hptr) - data.targets[i];
        acc += res * res;
    }
    return acc;
}

// Accumulates the unscaled gradient (sum over the rows of res * d pred/d θ
// for active coordinates) into `acc`, which must be zeroed by the caller.
// The caller applies the 2/batch factor.
void chunk_gradient(const ModelSpec& spec, std::span<const double> params,
                    const Dataset& data, std::span<const uint32_t> batch,
                    size_t batch_begin, size_t batch_end, IndexRange range,
                    double* acc, std::vector<double>& hidden,
                    std::vector<double>& dz) {
    size_t d = spec.input_dim;
    if (spec.arch == Architecture::Linear) {
        for (size_t b = batch_begin; b < batch_end; ++b) {
            const double* x = data.row(batch[b]);
            double res = predict(spec, params, x, nullptr) - data.targets[batch[b]];
            for (size_t k = range.begin; k < range.end; ++k) {
                double feature = (k < d) ? x[k] : 1.0;  // bias as constant input
                acc[k - range.begin] += res * feature;
            }
        }
        return;
    }

    size_t h = spec.hidden_width;
    const size_t b1_off = spec.b1_offset();
    const size_t w2_off = spec.w2_offset();
    const size_t b2_off = spec.b2_offset();
    const double* w2 = params.data() + w2_off;
    const bool touches_hidden = range.begin < w2_off;

    for (size_t b = batch_begin; b < batch_end; ++b) {
        const double* x = data.row(batch[b]);
        double res = predict(spec, params, x, hidden.data()) - data.targets[batch[b]];
        if (touches_hidden) {
            for (size_t j = 0; j < h; ++j)
                dz[j] = res * w2[j] * (1.0 - hidden[j] * hidden[j]);
        }
        for (size_t k = range.begin; k < range.end; ++k) {
            double g;
            if (k < b1_off) {
                g = dz[k / d] * x[k % d];
            } else if (k < w2_off) {
                g = dz[k - b1_off] * 1.0;
            } else if (k < b2_off) {
                g = res * hidden[k - w2_off];
            } else {
                g = res * 1.0;
            }
            acc[k - range.begin] += g;
        }
    }
}

void scale_gradient(std::span<double> grad, size_t batch_size) {
    double scale = 2.0 / double(batch_size);
    for (double& g : grad) g *= scale;
}

}  // namespace

// ---------------------------------------------------------------------------
// reference: plain serial loops

namespace reference {

double mse(const ModelSpec& spec, std::span<const double> params, const Dataset& data) {
    std::vector<double> hidden(spec.arch == Architecture::TwoLayer ? spec.hidden_width : 0);
    double acc = chunk_loss(spec, params, data, 0, data.rows, hidden);
    return acc / double(data.rows);
}

void mse_gradient(const ModelSpec& spec, std::span<const double> params,
                  const Dataset& data, std::span<const uint32_t> batch,
                  IndexRange range, std::span<double> grad_out) {
    std::vector<double> hidden(spec.arch == Architecture::TwoLayer ? spec.hidden_width : 0);
    std::vector<double> dz(hidden.size());
    for (double& g : grad_out) g = 0.0;
    chunk_gradient(spec, params, data, batch, 0, batch.size(), range,
                   grad_out.data(), hidden, dz);
    scale_gradient(grad_out, batch.size());
}

}  // namespace reference

// ---------------------------------------------------------------------------
// kernels: fixed-chunk accumulation, OpenMP across chunks

namespace kernels {

double mse(const ModelSpec& spec, std::span<const double> params, const Dataset& data) {
    size_t n = data.rows;
    size_t nchunks = (n + kLossChunk - 1) / kLossChunk;
    std::vector<double> partial(nchunks, 0.0);

#pragma omp parallel for schedule(static)
    for (int64_t c = 0; c < int64_t(nchunks); ++c) {
        std::vector<double> hidden(spec.arch == Architecture::TwoLayer ? spec.hidden_width : 0);
        size_t begin = size_t(c) * kLossChunk;
        size_t end = std::min(n, begin + kLossChunk);
        partial[size_t(c)] = chunk_loss(spec, params, data, begin, end, hidden);
    }

    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc / double(n);
}

void mse_gradient(const ModelSpec& spec, std::span<const double> params,
                  const Dataset& data, std::span<const uint32_t> batch,
                  IndexRange range, std::span<double> grad_out) {
    size_t n = batch.size();
    size_t len = range.size();
    size_t nchunks = (n + kLossChunk - 1) / kLossChunk;
    std::vector<double> partial(nchunks * len, 0.0);

#pragma omp parallel for schedule(static)
    for (int64_t c = 0; c < int64_t(nchunks); ++c) {
        std::vector<double> hidden(spec.arch == Architecture::TwoLayer ? spec.hidden_width : 0);
        std::vector<double> dz(hidden.size());
        size_t begin = size_t(c) * kLossChunk;
        size_t end = std::min(n, begin + kLossChunk);
        chunk_gradient(spec, params, data, batch, begin, end, range,
                       partial.data() + size_t(c) * len, hidden, dz);
    }

    for (size_t k = 0; k < len; ++k) {
        double acc = 0.0;
        for (size_t c = 0; c < nchunks; ++c) acc += partial[c * len + k];
        grad_out[k] = acc;
    }
    scale_gradient(grad_out, n);
}

}  // namespace kernels

// ---------------------------------------------------------------------------

double evaluate_loss(const ModelSpec& spec, std::span<const double> params,
                     const Dataset& data) {
    if (params.size() != spec.parameter_count())
        raise(Errc::ValidationError, "parameter vector length does not match model");
    if (data.rows == 0) raise(Errc::ValidationError, "empty dataset");
    double loss = kernels::mse(spec, params, data);
    if (!std::isfinite(loss)) raise(Errc::NonFiniteLoss, "prediction overflow");
    return loss;
}

// ---------------------------------------------------------------------------
// FLOP accounting (see model.hpp for the counting convention)

uint64_t flops_forward_residual(const ModelSpec& spec) {
    uint64_t d = spec.input_dim;
    if (spec.arch == Architecture::Linear) return 2 * d + 1;
    uint64_t h = spec.hidden_width;
    return h * (2 * d + 1) + 2 * h + 1;
}

uint64_t flops_mse(const ModelSpec& spec, uint64_t n_examples) {
    return n_examples * (flops_forward_residual(spec) + 2) + 1;
}

uint64_t flops_gradient(const ModelSpec& spec, uint64_t batch, IndexRange range) {
    uint64_t range_len = range.size();
    uint64_t per_example = flops_forward_residual(spec) + 2 * range_len;
    if (spec.arch == Architecture::TwoLayer && range.begin < spec.w2_offset())
        per_example += 4 * spec.hidden_width;
    return batch * per_example + range_len + 1;
}

uint64_t flops_update(uint64_t range_len) { return 2 * range_len; }

}  // namespace puft
