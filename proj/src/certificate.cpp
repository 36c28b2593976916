// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/certificate.hpp"

#include <cmath>
#include <cstring>

#include "puft/errors.hpp"
#include "puft/sha256.hpp"

namespace puft {

Bytes Certificate::signed_region() const {
    Bytes out;
    out.reserve(kSignedRegionBytes);
    put_bytes(out, ByteSpan(miner_pubkey.data(), miner_pubkey.size()));
    put_u64_be(out, cycle_id);
    put_u64_be(out, params_trained);
    put_f64_be(out, loss_before);
    put_f64_be(out, loss_after);
    put_u64_be(out, timestamp);
    put_bytes(out, ByteSpan(cert_nonce.data(), cert_nonce.size()));
    return out;
}

Bytes Certificate::serialize() const {
    Bytes out = signed_region();
    auto sig = server_signature.serialize();
    put_bytes(out, ByteSpan(sig.data(), sig.size()));
    return out;
}

Certificate Certificate::deserialize(ByteSpan bytes) {
    if (bytes.size() != kSerializedBytes)
        raise(Errc::ParseError, "certificate must be 153 bytes");
    Certificate c;
    const uint8_t* p = bytes.data();
    std::memcpy(c.miner_pubkey.data(), p, 33);
    c.cycle_id = read_u64_be(p + 33);
    c.params_trained = read_u64_be(p + 41);
    c.loss_before = read_f64_be(p + 49);
    c.loss_after = read_f64_be(p + 57);
    c.timestamp = read_u64_be(p + 65);
    std::memcpy(c.cert_nonce.data(), p + 73, 16);
    c.server_signature = ecdsa::Signature::deserialize(p + 89);
    return c;
}

Hash256 Certificate::hash(OpMeter* meter) const {
    meter_hash(meter);
    return double_sha256(signed_region());
}

Certificate issue_certificate(const ecdsa::KeyPair& server_key,
                              const ecdsa::CompressedPubkey& miner_pubkey,
                              uint64_t cycle_id, uint64_t params_trained,
                              double loss_before, double loss_after,
                              uint64_t timestamp,
                              const std::array<uint8_t, 16>& cert_nonce) {
    if (!std::isfinite(loss_before) || !std::isfinite(loss_after))
        raise(Errc::NonFiniteMetric, "certificate losses must be finite");
    Certificate cert;
    cert.miner_pubkey = miner_pubkey;
    cert.cycle_id = cycle_id;
    cert.params_trained = params_trained;
    cert.loss_before = loss_before;
    cert.loss_after = loss_after;
    cert.timestamp = timestamp;
    cert.cert_nonce = cert_nonce;
    cert.server_signature = ecdsa::sign(server_key, cert.signed_region());
    return cert;
}

bool verify_certificate(const ecdsa::PublicKey& server_pub, const Certificate& cert) {
    return ecdsa::verify(server_pub, cert.signed_region(), cert.server_signature);
}

bool verify_certificate(ByteSpan server_pub33, const Certificate& cert) {
    auto pub = ecdsa::PublicKey::parse_compressed(server_pub33);
    if (!pub) return false;
    return verify_certificate(*pub, cert);
}

}  // namespace puft
