// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/dataset.hpp"

#include <numeric>

#include "puft/errors.hpp"
#include "puft/rng.hpp"

namespace puft {

Dataset Dataset::slice(size_t begin, size_t end) const {
    Dataset out;
    out.rows = end - begin;
    out.dim = dim;
    out.features.assign(features.begin() + begin * dim, features.begin() + end * dim);
    out.targets.assign(targets.begin() + begin, targets.begin() + end);
    return out;
}

SyntheticData make_synthetic_dataset(uint64_t seed, size_t n_examples, size_t dim,
                                     double noise_std) {
    if (n_examples < 2) raise(Errc::ConfigInvalid, "need at least 2 examples");
    if (dim < 1) raise(Errc::ConfigInvalid, "need at least 1 input dimension");
    if (noise_std < 0.0) raise(Errc::ConfigInvalid, "noise_std must be >= 0");

    Rng rng(seed);
    std::vector<double> truth(dim + 1);
    for (double& w : truth) w = rng.uniform(-1.0, 1.0);

    std::vector<double> features(n_examples * dim);
    std::vector<double> targets(n_examples);
    for (size_t i = 0; i < n_examples; ++i) {
        double acc = 0.0;
        for (size_t j = 0; j < dim; ++j) {
            double x = rng.uniform(-1.0, 1.0);
            features[i * dim + j] = x;
            acc += truth[j] * x;
        }
        acc += truth[dim];
        if (noise_std > 0.0) acc += noise_std * rng.normal();
        targets[i] = acc;
    }

    std::vector<size_t> order(n_examples);
    std::iota(order.begin(), order.end(), size_t(0));
    rng.shuffle(order);

    size_t n_train = n_examples * 4 / 5;
    SyntheticData out;
    out.true_params = std::move(truth);
    auto fill = [&](Dataset& d, size_t begin, size_t end) {
        d.rows = end - begin;
        d.dim = dim;
        d.features.resize(d.rows * dim);
        d.targets.resize(d.rows);
        for (size_t i = begin; i < end; ++i) {
            size_t src = order[i];
            for (size_t j = 0; j < dim; ++j)
                d.features[(i - begin) * dim + j] = features[src * dim + j];
            d.targets[i - begin] = targets[src];
        }
    };
    fill(out.train, 0, n_train);
    fill(out.validation, n_train, n_examples);
    return out;
}

}  // namespace puft
