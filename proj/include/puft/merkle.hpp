// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <vector>

#include "puft/bytes.hpp"
#include "puft/meter.hpp"

namespace puft {

// Merkle root over double-SHA-256 leaves. Adjacent nodes pair left-to-right;
// an odd node at any level pairs with a copy of itself (Bitcoin convention).
// Throws EmptyTransactionSet for an empty list.
Hash256 merkle_root(const std::vector<Bytes>& transactions, OpMeter* meter = nullptr);

}  // namespace puft
