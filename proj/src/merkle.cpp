// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/merkle.hpp"

#include "puft/errors.hpp"
#include "puft/sha256.hpp"

namespace puft {

Hash256 merkle_root(const std::vector<Bytes>& transactions, OpMeter* meter) {
    if (transactions.empty())
        raise(Errc::EmptyTransactionSet, "merkle root of zero transactions");

    std::vector<Hash256> level;
    level.reserve(transactions.size());
    for (const Bytes& tx : transactions) {
        meter_hash(meter);
        level.push_back(double_sha256(tx));
    }

    while (level.size() > 1) {
        std::vector<Hash256> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t i = 0; i < level.size(); i += 2) {
            const Hash256& left = level[i];
            const Hash256& right = (i + 1 < level.size()) ? level[i + 1] : level[i];
            uint8_t pair[64];
            std::memcpy(pair, left.data(), 32);
            std::memcpy(pair + 32, right.data(), 32);
            meter_hash(meter);
            next.push_back(double_sha256(ByteSpan(pair, 64)));
        }
        level = std::move(next);
    }
    return level[0];
}

}  // namespace puft
