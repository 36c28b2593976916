// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.
//
// Serial reference vs chunked/OpenMP kernels: loss evaluation, gradient,
// and the PoW nonce scan. Prints a table with speedups and checks that the
// two paths agree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "puft/dataset.hpp"
#include "puft/kernels.hpp"
#include "puft/pow.hpp"
#include "puft/rng.hpp"

using namespace puft;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
#if defined(_OPENMP)
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; comparing identical serial paths\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    const size_t n = 200000, d = 32, h = 16;
    SyntheticData data = make_synthetic_dataset(7, n, d, 0.05);

    // loss, linear
    {
        ModelSpec spec{Architecture::Linear, d, 0};
        Rng rng(11);
        std::vector<double> params(spec.parameter_count());
        for (double& p : params) p = rng.uniform(-1.0, 1.0);
        volatile double sink = 0.0;
        double ref = 0.0, par = 0.0;
        double ts = time_best_of(3, [&] { sink = ref = reference::mse(spec, params, data.train); });
        double tp = time_best_of(3, [&] { sink = par = kernels::mse(spec, params, data.train); });
        (void)sink;
        report("mse linear", ts, tp, std::abs(ref - par) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }

    // loss, two-layer
    {
        ModelSpec spec{Architecture::TwoLayer, d, h};
        Rng rng(12);
        std::vector<double> params(spec.parameter_count());
        for (double& p : params) p = rng.uniform(-0.5, 0.5);
        double ref = 0.0, par = 0.0;
        double ts = time_best_of(3, [&] { ref = reference::mse(spec, params, data.train); });
        double tp = time_best_of(3, [&] { par = kernels::mse(spec, params, data.train); });
        report("mse two-layer", ts, tp, std::abs(ref - par) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }

    // gradient, two-layer full batch
    {
        ModelSpec spec{Architecture::TwoLayer, d, h};
        Rng rng(13);
        std::vector<double> params(spec.parameter_count());
        for (double& p : params) p = rng.uniform(-0.5, 0.5);
        std::vector<uint32_t> batch(data.train.rows);
        std::iota(batch.begin(), batch.end(), 0u);
        IndexRange range{0, spec.parameter_count()};
        std::vector<double> g_ref(range.size()), g_par(range.size());
        double ts = time_best_of(3, [&] {
            reference::mse_gradient(spec, params, data.train, batch, range, g_ref);
        });
        double tp = time_best_of(3, [&] {
            kernels::mse_gradient(spec, params, data.train, batch, range, g_par);
        });
        double max_rel = 0.0;
        for (size_t i = 0; i < g_ref.size(); ++i) {
            double denom = std::max(1e-12, std::abs(g_ref[i]));
            max_rel = std::max(max_rel, std::abs(g_ref[i] - g_par[i]) / denom);
        }
        report("gradient two-layer", ts, tp, max_rel <= 1e-9);
    }

    // pow scan
    {
        BlockHeader header;
        header.version = 1;
        header.timestamp = 42;
        Rng rng(14);
        rng.fill(header.prev_hash);
        rng.fill(header.merkle_root);
        PowTarget target = PowTarget::from_difficulty_bits(19);
        MineResult serial{}, parallel{};
        double ts = time_best_of(2, [&] {
            serial = pow_mine_serial(header, target, uint64_t(1) << 24);
        });
        double tp = time_best_of(2, [&] {
            parallel = pow_mine(header, target, uint64_t(1) << 24);
        });
        bool agree = serial.nonce == parallel.nonce && serial.attempts == parallel.attempts;
        report("pow nonce scan", ts, tp, agree);
        std::printf("  (nonce %llu after %llu attempts)\n",
                    (unsigned long long)serial.nonce, (unsigned long long)serial.attempts);
    }
    return 0;
}
