// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/lottery.hpp"

#include <cmath>

#include "puft/errors.hpp"
#include "puft/sha256.hpp"
#include "puft/u256.hpp"

namespace puft {

namespace {

// floor(x * 2^256) for x in [0, 1), exact: a double's 53-bit mantissa always
// fits a 256-bit fixed-point fraction. Returns false for x >= 1 (treated as
// "above any u" by the caller).
bool fix256(double x, U256& out) {
    if (x >= 1.0) return false;
    out = U256{};
    if (x <= 0.0) return true;
    int exponent;
    double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exp, mantissa in [0.5, 1)
    auto bits = uint64_t(std::ldexp(mantissa, 53));
    int shift = 256 + exponent - 53;
    if (shift >= 0) {
        out = shl(U256::from_u64(bits), unsigned(shift));
    } else if (shift > -64) {
        out = U256::from_u64(bits >> -shift);
    }
    return true;
}

}  // namespace

Hash256 lottery_seed(uint64_t cycle_id, std::span<const TrainingReport> accepted_reports,
                     OpMeter* meter) {
    Bytes preimage;
    put_u64_be(preimage, cycle_id);
    for (const TrainingReport& report : accepted_reports)
        put_bytes(preimage, report.canonical_bytes());
    meter_hash(meter);
    return double_sha256(preimage);
}

size_t weighted_lottery(std::span<const double> weights, const Hash256& seed) {
    if (weights.empty()) raise(Errc::DegenerateWeights, "no lottery weights");
    double sum = 0.0;
    bool any_positive = false;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w))
            raise(Errc::ValidationError, "weights must be finite and >= 0");
        any_positive = any_positive || w > 0.0;
        sum += w;
    }
    if (!any_positive) raise(Errc::DegenerateWeights, "all lottery weights are zero");
    if (std::abs(sum - 1.0) > 1e-9)
        raise(Errc::ValidationError, "weights must sum to 1");

    U256 u = U256::from_be_bytes(seed);
    double cumulative = 0.0;
    size_t last_positive = 0;
    for (size_t j = 0; j < weights.size(); ++j) {
        if (weights[j] > 0.0) last_positive = j;
        cumulative += weights[j];
        U256 boundary;
        if (!fix256(cumulative, boundary)) return j;  // cumsum >= 1 beats any u
        if (boundary > u) return j;
    }
    // cumsum rounded slightly below 1 and u landed above it; the tail of the
    // distribution belongs to the last positive-weight miner.
    return last_positive;
}

}  // namespace puft
