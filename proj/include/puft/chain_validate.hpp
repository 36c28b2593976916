// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <string>
#include <vector>

#include "puft/block.hpp"
#include "puft/pow.hpp"

namespace puft {

struct BlockCheck {
    bool linkage_ok = false;
    bool merkle_ok = false;
    bool proof_ok = false;
    bool ok() const { return linkage_ok && merkle_ok && proof_ok; }
};

struct ValidationReport {
    std::vector<BlockCheck> blocks;
    bool valid = false;
};

// Structural validation: per block, prev-hash linkage, Merkle recomputation,
// and the consensus proof. Certificate blocks must carry the certificate,
// bind it via certificate_hash, verify under the server key, and keep
// nonce = 0; PoW blocks must clear certificate state and hash below target.
// Failures are report entries, never exceptions.
ValidationReport validate_chain(const Chain& chain, ByteSpan server_pub33,
                                PowTarget target, OpMeter* meter = nullptr);

// Validates `block` against the chain tip and appends it. Throws
// LinkageMismatch, MerkleMismatch, or ProofInvalid; on throw the chain is
// untouched.
void append_block(Chain& chain, Block block, ByteSpan server_pub33,
                  PowTarget target, OpMeter* meter = nullptr);

}  // namespace puft
