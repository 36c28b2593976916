// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <vector>

namespace puft {

// Dense regression dataset, features row-major.
struct Dataset {
    size_t rows = 0;
    size_t dim = 0;
    std::vector<double> features;  // rows * dim
    std::vector<double> targets;   // rows

    const double* row(size_t i) const { return features.data() + i * dim; }

    Dataset slice(size_t begin, size_t end) const;
};

struct SyntheticData {
    Dataset train;
    Dataset validation;
    // The generating linear parameters [w_0..w_{d-1}, b]; with zero noise a
    // Linear model at these values has exactly zero loss.
    std::vector<double> true_params;
};

// Seeded linear ground truth with Gaussian noise; deterministic per seed.
// 80/20 train/validation split by seeded shuffle (train rows = 4*n/5).
SyntheticData make_synthetic_dataset(uint64_t seed, size_t n_examples, size_t dim,
                                     double noise_std);

}  // namespace puft
