// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/chain_validate.hpp"

#include "puft/errors.hpp"
#include "puft/merkle.hpp"

namespace puft {

namespace {

bool check_proof(const Block& block, const ecdsa::PublicKey* server_pub,
                 PowTarget target, OpMeter* meter) {
    const BlockHeader& h = block.header;
    if (h.proof_kind == ProofKind::PowNonce) {
        if (block.certificate.has_value()) return false;
        if (h.certificate_hash != Hash256{}) return false;
        meter_hash(meter);  // the verifier re-hashes the header
        return pow_verify(h, target);
    }
    // TrainingCertificate
    if (!block.certificate.has_value()) return false;
    if (h.nonce != 0) return false;
    if (block.certificate->hash(meter) != h.certificate_hash) return false;
    if (!server_pub) return false;
    return verify_certificate(*server_pub, *block.certificate);
}

BlockCheck check_block(const Block& block, const Hash256& expected_prev,
                       const ecdsa::PublicKey* server_pub, PowTarget target,
                       OpMeter* meter) {
    BlockCheck c;
    c.linkage_ok = (block.header.prev_hash == expected_prev);
    if (block.transactions.empty()) {
        c.merkle_ok = false;
    } else {
        c.merkle_ok = (merkle_root(block.transactions, meter) == block.header.merkle_root);
    }
    c.proof_ok = check_proof(block, server_pub, target, meter);
    return c;
}

}  // namespace

ValidationReport validate_chain(const Chain& chain, ByteSpan server_pub33,
                                PowTarget target, OpMeter* meter) {
    auto server_pub = ecdsa::PublicKey::parse_compressed(server_pub33);
    ValidationReport report;
    report.valid = true;
    Hash256 prev{};
    for (const Block& block : chain.blocks) {
        BlockCheck c = check_block(block, prev, server_pub ? &*server_pub : nullptr,
                                   target, meter);
        report.valid = report.valid && c.ok();
        report.blocks.push_back(c);
        prev = block.header.hash(meter);
    }
    return report;
}

void append_block(Chain& chain, Block block, ByteSpan server_pub33,
                  PowTarget target, OpMeter* meter) {
    auto server_pub = ecdsa::PublicKey::parse_compressed(server_pub33);
    Hash256 tip{};
    if (!chain.blocks.empty()) tip = chain.blocks.back().header.hash(meter);
    BlockCheck c = check_block(block, tip,
                               server_pub ? &*server_pub : nullptr, target, meter);
    if (!c.linkage_ok) raise(Errc::LinkageMismatch, "block does not link to tip");
    if (!c.merkle_ok) raise(Errc::MerkleMismatch, "merkle root does not match transactions");
    if (!c.proof_ok) raise(Errc::ProofInvalid, "consensus proof failed verification");
    chain.blocks.push_back(std::move(block));
}

}  // namespace puft
