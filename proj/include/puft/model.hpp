// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <cstddef>

namespace puft {

enum class Architecture {
    Linear,    // P = d + 1                      [w_0..w_{d-1}, b]
    TwoLayer,  // P = d*h + h + h + 1            [W1 row-major, b1, w2, b2]
};

// Half-open slice of the flat parameter vector.
struct IndexRange {
    size_t begin = 0;
    size_t end = 0;
    size_t size() const { return end - begin; }
    bool contains(size_t i) const { return i >= begin && i < end; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct ModelSpec {
    Architecture arch = Architecture::Linear;
    size_t input_dim = 1;
    size_t hidden_width = 0;  // TwoLayer only

    size_t parameter_count() const {
        if (arch == Architecture::Linear) return input_dim + 1;
        return input_dim * hidden_width + hidden_width + hidden_width + 1;
    }

    // Flat layout offsets for TwoLayer.
    size_t w1_offset() const { return 0; }
    size_t b1_offset() const { return input_dim * hidden_width; }
    size_t w2_offset() const { return b1_offset() + hidden_width; }
    size_t b2_offset() const { return w2_offset() + hidden_width; }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Closed-form FLOP counts for the kernels, counting each scalar mul, add,
// sub, div, and tanh as one operation. The bias input is treated as a
// constant feature 1.0 so every active coordinate costs the same
// multiply-accumulate pair. These formulas are the single source of truth
// for the usefulness metric; tests pin the Linear ones by hand.
//
//   forward+residual (Linear):    2d + 1   per example
//   forward+residual (TwoLayer):  h(2d + 1) + 2h + 1   per example
uint64_t flops_forward_residual(const ModelSpec& spec);
// mean-squared error over n examples: n * (forward + square + accumulate) + 1
uint64_t flops_mse(const ModelSpec& spec, uint64_t n_examples);
// gradient of the batch MSE restricted to the active range; TwoLayer pays
// the per-unit backprop chain only when the range touches the hidden layer
uint64_t flops_gradient(const ModelSpec& spec, uint64_t batch, IndexRange range);
// one SGD update over range_len coordinates: mul + sub each
uint64_t flops_update(uint64_t range_len);

}  // namespace puft
