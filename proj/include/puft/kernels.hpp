// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <span>

#include "puft/dataset.hpp"
#include "puft/model.hpp"

namespace puft {

// Numeric kernels, in two flavors:
//
//   reference::  straight serial loops, left-to-right accumulation. The
//                oracle implementation tests and the benchmark compare
//                against.
//   kernels::    production path. Rows are accumulated in fixed chunks of
//                kLossChunk and the chunk partials are reduced in index
//                order, so results are bit-identical for any thread count
//                (OpenMP or none). Differs from reference:: only by float
//                summation order.
//
// Neither flavor throws on overflow; non-finite values propagate to the
// caller, which decides (evaluate_loss raises, the server marks the report
// rejected).

inline constexpr size_t kLossChunk = 1024;

namespace reference {
double mse(const ModelSpec& spec, std::span<const double> params, const Dataset& data);
void mse_gradient(const ModelSpec& spec, std::span<const double> params,
                  const Dataset& data, std::span<const uint32_t> batch,
                  IndexRange range, std::span<double> grad_out);
}  // namespace reference

namespace kernels {
double mse(const ModelSpec& spec, std::span<const double> params, const Dataset& data);
void mse_gradient(const ModelSpec& spec, std::span<const double> params,
                  const Dataset& data, std::span<const uint32_t> batch,
                  IndexRange range, std::span<double> grad_out);
}  // namespace kernels

// kernels::mse with the spec checks: params length must equal P, data
// non-empty; raises NonFiniteLoss when a prediction overflows.
double evaluate_loss(const ModelSpec& spec, std::span<const double> params,
                     const Dataset& data);

}  // namespace puft
