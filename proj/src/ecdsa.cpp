// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.
//
// secp256k1 arithmetic layout:
//
//   field element  fe      4x64 little-endian limbs, always reduced mod p
//   field multiply         schoolbook 4x4 -> 512-bit, then fold the high
//                          half with p = 2^256 - 0x1000003D1 twice
//   points                 Jacobian (X, Y, Z); mixed addition against affine
//   scalar multiply        left-to-right double-and-add
//   scalar field (mod n)   generic U256 routines; only a handful of
//                          multiplies happen per signature
//
// Nonces come from the HMAC-SHA256 drbg of RFC 6979 with qlen = hlen = 256,
// so no bit truncation is involved anywhere.

#include "puft/ecdsa.hpp"

#include <cassert>
#include <cstring>

#include "puft/sha256.hpp"

namespace puft::ecdsa {

namespace {

using u128 = unsigned __int128;

// ---------------------------------------------------------------------------
// Field arithmetic mod p, p = 2^256 - 0x1000003D1.

constexpr uint64_t kFoldP = 0x1000003D1ull;  // 2^256 mod p

const U256 kP = U256{{0xFFFFFFFEFFFFFC2Full, 0xFFFFFFFFFFFFFFFFull,
                      0xFFFFFFFFFFFFFFFFull, 0xFFFFFFFFFFFFFFFFull}};
const U256 kN = U256{{0xBFD25E8CD0364141ull, 0xBAAEDCE6AF48A03Bull,
                      0xFFFFFFFFFFFFFFFEull, 0xFFFFFFFFFFFFFFFFull}};
const U256 kHalfN = U256{{0xDFE92F46681B20A0ull, 0x5D576E7357A4501Dull,
                          0xFFFFFFFFFFFFFFFFull, 0x7FFFFFFFFFFFFFFFull}};
const U256 kGx = U256{{0x59F2815B16F81798ull, 0x029BFCDB2DCE28D9ull,
                       0x55A06295CE870B07ull, 0x79BE667EF9DCBBACull}};
const U256 kGy = U256{{0x9C47D08FFB10D4B8ull, 0xFD17B448A6855419ull,
                       0x5DA4FBFC0E1108A8ull, 0x483ADA7726A3C465ull}};

struct fe {
    uint64_t v[4];
};

inline fe fe_from(const U256& u) { return fe{{u.w[0], u.w[1], u.w[2], u.w[3]}}; }
inline U256 fe_to(const fe& a) { return U256{{a.v[0], a.v[1], a.v[2], a.v[3]}}; }
inline bool fe_is_zero(const fe& a) { return (a.v[0] | a.v[1] | a.v[2] | a.v[3]) == 0; }
inline bool fe_eq(const fe& a, const fe& b) {
    return a.v[0] == b.v[0] && a.v[1] == b.v[1] && a.v[2] == b.v[2] && a.v[3] == b.v[3];
}

inline fe fe_add(const fe& a, const fe& b) {
    return fe_from(addmod(fe_to(a), fe_to(b), kP));
}
inline fe fe_sub(const fe& a, const fe& b) {
    return fe_from(submod(fe_to(a), fe_to(b), kP));
}

// 4x4 schoolbook multiply, column-wise with a 3-word running accumulator.
void mul_wide(const uint64_t a[4], const uint64_t b[4], uint64_t out[8]) {
    uint64_t c0 = 0, c1 = 0, c2 = 0;
    auto muladd = [&](uint64_t x, uint64_t y) {
        u128 prod = (u128)x * y;
        uint64_t lo = uint64_t(prod), hi = uint64_t(prod >> 64);
        c0 += lo;
        uint64_t carry = (c0 < lo) ? 1 : 0;
        uint64_t t = hi + carry;
        uint64_t over = (t < hi) ? 1 : 0;
        c1 += t;
        over += (c1 < t) ? 1 : 0;
        c2 += over;
    };
    for (int col = 0; col < 7; ++col) {
        int lo = col < 4 ? 0 : col - 3;
        int hi = col < 4 ? col : 3;
        for (int i = lo; i <= hi; ++i) muladd(a[i], b[col - i]);
        out[col] = c0;
        c0 = c1;
        c1 = c2;
        c2 = 0;
    }
    out[7] = c0;
}

// Reduce a 512-bit product mod p by folding the top 256 bits with
// 2^256 ≡ kFoldP (mod p).
fe fe_reduce_wide(const uint64_t t[8]) {
    // first fold: r = lo + hi * kFoldP
    uint64_t r[4], fold_carry = 0;
    u128 acc = 0;
    for (int i = 0; i < 4; ++i) {
        acc += (u128)t[4 + i] * kFoldP;
        acc += t[i];
        r[i] = uint64_t(acc);
        acc >>= 64;
    }
    fold_carry = uint64_t(acc);  // < 2^34

    // second fold: r += fold_carry * kFoldP
    u128 ext = (u128)fold_carry * kFoldP;
    acc = (u128)r[0] + uint64_t(ext);
    r[0] = uint64_t(acc);
    acc >>= 64;
    acc += (u128)r[1] + uint64_t(ext >> 64);
    r[1] = uint64_t(acc);
    acc >>= 64;
    for (int i = 2; i < 4 && acc; ++i) {
        acc += r[i];
        r[i] = uint64_t(acc);
        acc >>= 64;
    }
    if (acc) {
        // wrapped past 2^256 once more; the wrapped value is tiny
        acc = (u128)r[0] + kFoldP;
        r[0] = uint64_t(acc);
        acc >>= 64;
        for (int i = 1; i < 4 && acc; ++i) {
            acc += r[i];
            r[i] = uint64_t(acc);
            acc >>= 64;
        }
    }

    U256 res{{r[0], r[1], r[2], r[3]}};
    if (res >= kP) {
        uint64_t borrow;
        res = sub(res, kP, borrow);
    }
    return fe_from(res);
}

inline fe fe_mul(const fe& a, const fe& b) {
    uint64_t wide[8];
    mul_wide(a.v, b.v, wide);
    return fe_reduce_wide(wide);
}

inline fe fe_sqr(const fe& a) { return fe_mul(a, a); }

inline fe fe_inv(const fe& a) { return fe_from(invmod(fe_to(a), kP)); }

fe fe_pow(const fe& base, const U256& exp) {
    fe result = fe_from(U256::from_u64(1));
    int top = exp.top_bit();
    for (int i = top; i >= 0; --i) {
        result = fe_sqr(result);
        if (exp.bit(unsigned(i))) result = fe_mul(result, base);
    }
    return result;
}

inline fe fe_dbl(const fe& a) { return fe_add(a, a); }

// ---------------------------------------------------------------------------
// Point arithmetic.

struct Affine {
    fe x, y;
    bool infinity = false;
};

struct Jacobian {
    fe x, y, z;
    bool infinity = true;
};

Jacobian jac_from_affine(const Affine& a) {
    if (a.infinity) return Jacobian{};
    return Jacobian{a.x, a.y, fe_from(U256::from_u64(1)), false};
}

Jacobian jac_double(const Jacobian& p) {
    if (p.infinity || fe_is_zero(p.y)) return Jacobian{};
    fe a = fe_sqr(p.x);
    fe b = fe_sqr(p.y);
    fe c = fe_sqr(b);
    fe t = fe_sqr(fe_add(p.x, b));
    fe d = fe_dbl(fe_sub(fe_sub(t, a), c));
    fe e = fe_add(fe_dbl(a), a);  // 3*a, curve coefficient a = 0
    fe f = fe_sqr(e);
    Jacobian r;
    r.infinity = false;
    r.x = fe_sub(f, fe_dbl(d));
    fe c8 = fe_dbl(fe_dbl(fe_dbl(c)));
    r.y = fe_sub(fe_mul(e, fe_sub(d, r.x)), c8);
    r.z = fe_dbl(fe_mul(p.y, p.z));
    return r;
}

// Mixed addition: Jacobian + affine.
Jacobian jac_add_affine(const Jacobian& p, const Affine& q) {
    if (q.infinity) return p;
    if (p.infinity) return jac_from_affine(q);
    fe z1z1 = fe_sqr(p.z);
    fe u2 = fe_mul(q.x, z1z1);
    fe s2 = fe_mul(fe_mul(q.y, p.z), z1z1);
    fe h = fe_sub(u2, p.x);
    fe r = fe_sub(s2, p.y);
    if (fe_is_zero(h)) {
        if (fe_is_zero(r)) return jac_double(p);
        return Jacobian{};  // P + (-P)
    }
    fe hh = fe_sqr(h);
    fe hhh = fe_mul(h, hh);
    fe v = fe_mul(p.x, hh);
    Jacobian out;
    out.infinity = false;
    out.x = fe_sub(fe_sub(fe_sqr(r), hhh), fe_dbl(v));
    out.y = fe_sub(fe_mul(r, fe_sub(v, out.x)), fe_mul(p.y, hhh));
    out.z = fe_mul(p.z, h);
    return out;
}

Affine jac_to_affine(const Jacobian& p) {
    if (p.infinity) return Affine{{}, {}, true};
    fe zinv = fe_inv(p.z);
    fe zinv2 = fe_sqr(zinv);
    return Affine{fe_mul(p.x, zinv2), fe_mul(p.y, fe_mul(zinv2, zinv)), false};
}

Affine affine_add(const Affine& p, const Affine& q) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    fe lambda;
    if (fe_eq(p.x, q.x)) {
        if (!fe_eq(p.y, q.y) || fe_is_zero(p.y)) return Affine{{}, {}, true};
        // tangent: (3x^2) / (2y)
        fe num = fe_mul(fe_add(fe_dbl(fe_sqr(p.x)), fe_sqr(p.x)), fe_inv(fe_dbl(p.y)));
        lambda = num;
    } else {
        lambda = fe_mul(fe_sub(q.y, p.y), fe_inv(fe_sub(q.x, p.x)));
    }
    fe x3 = fe_sub(fe_sub(fe_sqr(lambda), p.x), q.x);
    fe y3 = fe_sub(fe_mul(lambda, fe_sub(p.x, x3)), p.y);
    return Affine{x3, y3, false};
}

Affine scalar_mul(const U256& k, const Affine& p) {
    Jacobian acc;
    int top = k.top_bit();
    for (int i = top; i >= 0; --i) {
        acc = jac_double(acc);
        if (k.bit(unsigned(i))) acc = jac_add_affine(acc, p);
    }
    return jac_to_affine(acc);
}

const Affine& generator() {
    static const Affine g{fe_from(kGx), fe_from(kGy), false};
    return g;
}

bool on_curve(const fe& x, const fe& y) {
    fe rhs = fe_add(fe_mul(fe_sqr(x), x), fe_from(U256::from_u64(7)));
    return fe_eq(fe_sqr(y), rhs);
}

// ---------------------------------------------------------------------------
// RFC 6979 nonce stream. next() yields candidates; the caller keeps pulling
// until it has a nonce whose r and s are both nonzero.

class NonceStream {
public:
    NonceStream(const U256& secret, const Hash256& h1) {
        uint8_t x_octets[32], z_octets[32];
        secret.to_be_bytes(x_octets);
        U256 z = U256::from_be_bytes(h1);
        if (z >= kN) {
            uint64_t borrow;
            z = sub(z, kN, borrow);
        }
        z.to_be_bytes(z_octets);

        std::memset(v_, 0x01, 32);
        std::memset(k_, 0x00, 32);
        feed(0x00, x_octets, z_octets);
        feed(0x01, x_octets, z_octets);
    }

    U256 next() {
        for (;;) {
            Hash256 h = hmac_sha256(ByteSpan(k_, 32), ByteSpan(v_, 32));
            std::memcpy(v_, h.data(), 32);
            U256 candidate = U256::from_be_bytes(v_);
            if (!candidate.is_zero() && candidate < kN) return candidate;
            retune();
        }
    }

    // Called after a rejected candidate (k with r == 0 or s == 0 as well).
    void retune() {
        Bytes data(v_, v_ + 32);
        data.push_back(0x00);
        Hash256 nk = hmac_sha256(ByteSpan(k_, 32), data);
        std::memcpy(k_, nk.data(), 32);
        Hash256 nv = hmac_sha256(ByteSpan(k_, 32), ByteSpan(v_, 32));
        std::memcpy(v_, nv.data(), 32);
    }

private:
    void feed(uint8_t tag, const uint8_t x_octets[32], const uint8_t z_octets[32]) {
        Bytes data(v_, v_ + 32);
        data.push_back(tag);
        data.insert(data.end(), x_octets, x_octets + 32);
        data.insert(data.end(), z_octets, z_octets + 32);
        Hash256 nk = hmac_sha256(ByteSpan(k_, 32), data);
        std::memcpy(k_, nk.data(), 32);
        Hash256 nv = hmac_sha256(ByteSpan(k_, 32), ByteSpan(v_, 32));
        std::memcpy(v_, nv.data(), 32);
    }

    uint8_t v_[32];
    uint8_t k_[32];
};

U256 message_scalar(ByteSpan message) {
    Hash256 h = sha256(message);
    U256 z = U256::from_be_bytes(h);
    if (z >= kN) {
        uint64_t borrow;
        z = sub(z, kN, borrow);
    }
    return z;
}

}  // namespace

// ---------------------------------------------------------------------------

const U256& curve_order() { return kN; }
const U256& curve_order_half() { return kHalfN; }

std::array<uint8_t, kSignatureBytes> Signature::serialize() const {
    std::array<uint8_t, kSignatureBytes> out;
    r.to_be_bytes(out.data());
    s.to_be_bytes(out.data() + 32);
    return out;
}

Signature Signature::deserialize(const uint8_t* p) {
    return Signature{U256::from_be_bytes(p), U256::from_be_bytes(p + 32)};
}

CompressedPubkey PublicKey::serialize_compressed() const {
    CompressedPubkey out;
    out[0] = y.is_even() ? 0x02 : 0x03;
    x.to_be_bytes(out.data() + 1);
    return out;
}

std::optional<PublicKey> PublicKey::parse_compressed(ByteSpan bytes33) {
    if (bytes33.size() != kCompressedPubkeyBytes) return std::nullopt;
    uint8_t prefix = bytes33[0];
    if (prefix != 0x02 && prefix != 0x03) return std::nullopt;
    U256 x = U256::from_be_bytes(bytes33.data() + 1);
    if (x >= kP) return std::nullopt;

    // y = (x^3 + 7)^((p+1)/4); valid only if the result actually squares back.
    fe fx = fe_from(x);
    fe rhs = fe_add(fe_mul(fe_sqr(fx), fx), fe_from(U256::from_u64(7)));
    uint64_t carry;
    U256 exp = add(kP, U256::from_u64(1), carry);
    exp = shr1(shr1(exp, carry));
    fe y = fe_pow(rhs, exp);
    if (!fe_eq(fe_sqr(y), rhs)) return std::nullopt;

    U256 yv = fe_to(y);
    bool want_even = (prefix == 0x02);
    if (yv.is_even() != want_even) {
        uint64_t borrow;
        yv = sub(kP, yv, borrow);
    }
    PublicKey pk{x, yv};
    if (!on_curve(fe_from(pk.x), fe_from(pk.y))) return std::nullopt;
    return pk;
}

KeyPair generate_keypair(ByteSpan seed32) {
    for (uint32_t counter = 0;; ++counter) {
        Sha256 h;
        h.update(seed32);
        uint8_t ctr[4] = {uint8_t(counter >> 24), uint8_t(counter >> 16),
                          uint8_t(counter >> 8), uint8_t(counter)};
        h.update(ctr, 4);
        Hash256 digest = h.finalize();
        U256 d = U256::from_be_bytes(digest);
        if (d.is_zero() || d >= kN) continue;
        Affine pub = scalar_mul(d, generator());
        assert(!pub.infinity);
        return KeyPair{d, PublicKey{fe_to(pub.x), fe_to(pub.y)}};
    }
}

Signature sign(const KeyPair& key, ByteSpan message) {
    U256 z = message_scalar(message);
    Hash256 h1 = sha256(message);
    NonceStream nonces(key.secret, h1);
    for (;;) {
        U256 k = nonces.next();
        Affine point = scalar_mul(k, generator());
        U256 r = fe_to(point.x);
        if (r >= kN) {
            uint64_t borrow;
            r = sub(r, kN, borrow);
        }
        if (r.is_zero()) {
            nonces.retune();
            continue;
        }
        U256 kinv = invmod(k, kN);
        U256 s = mulmod(kinv, addmod(z, mulmod(r, key.secret, kN), kN), kN);
        if (s.is_zero()) {
            nonces.retune();
            continue;
        }
        if (s > kHalfN) {
            uint64_t borrow;
            s = sub(kN, s, borrow);
        }
        return Signature{r, s};
    }
}

bool verify(const PublicKey& pub, ByteSpan message, const Signature& sig) {
    if (sig.r.is_zero() || sig.r >= kN) return false;
    if (sig.s.is_zero() || sig.s >= kN) return false;
    fe px = fe_from(pub.x), py = fe_from(pub.y);
    if (pub.x >= kP || pub.y >= kP || !on_curve(px, py)) return false;

    U256 z = message_scalar(message);
    U256 w = invmod(sig.s, kN);
    U256 u1 = mulmod(z, w, kN);
    U256 u2 = mulmod(sig.r, w, kN);

    Affine q{px, py, false};
    Affine a = u1.is_zero() ? Affine{{}, {}, true} : scalar_mul(u1, generator());
    Affine b = u2.is_zero() ? Affine{{}, {}, true} : scalar_mul(u2, q);
    Affine sum = affine_add(a, b);
    if (sum.infinity) return false;

    U256 xr = fe_to(sum.x);
    if (xr >= kN) {
        uint64_t borrow;
        xr = sub(xr, kN, borrow);
    }
    return xr == sig.r;
}

bool verify(ByteSpan pubkey33, ByteSpan message, const Signature& sig) {
    auto pub = PublicKey::parse_compressed(pubkey33);
    if (!pub) return false;
    return verify(*pub, message, sig);
}

}  // namespace puft::ecdsa
