// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/block.hpp"

#include <cstring>

#include "puft/errors.hpp"
#include "puft/sha256.hpp"

namespace puft {

Bytes BlockHeader::serialize() const {
    Bytes out;
    out.reserve(kSerializedBytes);
    put_u32_be(out, version);
    put_bytes(out, ByteSpan(prev_hash.data(), prev_hash.size()));
    put_bytes(out, ByteSpan(merkle_root.data(), merkle_root.size()));
    put_u64_be(out, timestamp);
    out.push_back(uint8_t(proof_kind));
    put_u64_be(out, nonce);
    put_bytes(out, ByteSpan(certificate_hash.data(), certificate_hash.size()));
    return out;
}

BlockHeader BlockHeader::deserialize(ByteSpan bytes) {
    if (bytes.size() != kSerializedBytes)
        raise(Errc::ParseError, "block header must be 117 bytes");
    const uint8_t* p = bytes.data();
    BlockHeader h;
    h.version = read_u32_be(p);
    std::memcpy(h.prev_hash.data(), p + 4, 32);
    std::memcpy(h.merkle_root.data(), p + 36, 32);
    h.timestamp = read_u64_be(p + 68);
    if (p[76] > 1) raise(Errc::ParseError, "unknown proof kind");
    h.proof_kind = ProofKind(p[76]);
    h.nonce = read_u64_be(p + kNonceOffset);
    std::memcpy(h.certificate_hash.data(), p + 85, 32);
    return h;
}

Hash256 BlockHeader::hash(OpMeter* meter) const {
    meter_hash(meter);
    return double_sha256(serialize());
}

Bytes Block::serialize() const {
    Bytes out = header.serialize();
    put_u32_be(out, uint32_t(transactions.size()));
    for (const Bytes& tx : transactions) {
        put_u32_be(out, uint32_t(tx.size()));
        put_bytes(out, tx);
    }
    out.push_back(certificate.has_value() ? 1 : 0);
    if (certificate) put_bytes(out, certificate->serialize());
    return out;
}

Block Block::deserialize(ByteSpan bytes) {
    size_t pos = 0;
    auto need = [&](size_t n) {
        if (bytes.size() - pos < n) raise(Errc::ParseError, "truncated block");
    };
    need(BlockHeader::kSerializedBytes);
    Block b;
    b.header = BlockHeader::deserialize(bytes.subspan(0, BlockHeader::kSerializedBytes));
    pos = BlockHeader::kSerializedBytes;

    need(4);
    uint32_t ntx = read_u32_be(bytes.data() + pos);
    pos += 4;
    for (uint32_t i = 0; i < ntx; ++i) {
        need(4);
        uint32_t len = read_u32_be(bytes.data() + pos);
        pos += 4;
        need(len);
        b.transactions.emplace_back(bytes.begin() + pos, bytes.begin() + pos + len);
        pos += len;
    }

    need(1);
    uint8_t has_cert = bytes[pos++];
    if (has_cert > 1) raise(Errc::ParseError, "bad certificate flag");
    if (has_cert) {
        need(Certificate::kSerializedBytes);
        b.certificate = Certificate::deserialize(bytes.subspan(pos, Certificate::kSerializedBytes));
        pos += Certificate::kSerializedBytes;
    }
    if (pos != bytes.size()) raise(Errc::ParseError, "trailing bytes after block");
    return b;
}

}  // namespace puft
