// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#include "puft/u256.hpp"

#include <cassert>

#include "puft/errors.hpp"

namespace puft {

U256 U256::from_be_bytes(const uint8_t* p) {
    U256 r;
    r.w[3] = read_u64_be(p);
    r.w[2] = read_u64_be(p + 8);
    r.w[1] = read_u64_be(p + 16);
    r.w[0] = read_u64_be(p + 24);
    return r;
}

void U256::to_be_bytes(uint8_t* out) const {
    for (int limb = 3; limb >= 0; --limb)
        for (int i = 0; i < 8; ++i) *out++ = uint8_t(w[limb] >> (56 - 8 * i));
}

U256 U256::from_hex(std::string_view hex) {
    if (hex.empty() || hex.size() > 64) raise(Errc::ParseError, "u256 hex must be 1..64 nibbles");
    std::string padded(64 - hex.size(), '0');
    padded.append(hex);
    Bytes raw = from_hex_or_throw(padded);
    return from_be_bytes(raw.data());
}

std::string U256::to_hex() const {
    uint8_t raw[32];
    to_be_bytes(raw);
    return puft::to_hex(ByteSpan(raw, 32));
}

int U256::top_bit() const {
    for (int limb = 3; limb >= 0; --limb) {
        if (w[limb] != 0) return limb * 64 + 63 - __builtin_clzll(w[limb]);
    }
    return -1;
}

int cmp(const U256& a, const U256& b) {
    for (int i = 3; i >= 0; --i) {
        if (a.w[i] < b.w[i]) return -1;
        if (a.w[i] > b.w[i]) return 1;
    }
    return 0;
}

U256 add(const U256& a, const U256& b, uint64_t& carry_out) {
    U256 r;
    unsigned __int128 acc = 0;
    for (int i = 0; i < 4; ++i) {
        acc += (unsigned __int128)a.w[i] + b.w[i];
        r.w[i] = uint64_t(acc);
        acc >>= 64;
    }
    carry_out = uint64_t(acc);
    return r;
}

U256 sub(const U256& a, const U256& b, uint64_t& borrow_out) {
    U256 r;
    uint64_t borrow = 0;
    for (int i = 0; i < 4; ++i) {
        uint64_t bi = b.w[i] + borrow;
        uint64_t wrapped = (borrow && bi == 0) ? 1 : 0;  // b.w[i] == max and borrow
        r.w[i] = a.w[i] - bi;
        borrow = wrapped | (a.w[i] < bi ? 1 : 0);
    }
    borrow_out = borrow;
    return r;
}

U256 shr1(const U256& a, uint64_t carry_in_bit) {
    U256 r;
    for (int i = 0; i < 3; ++i) r.w[i] = (a.w[i] >> 1) | (a.w[i + 1] << 63);
    r.w[3] = (a.w[3] >> 1) | (carry_in_bit << 63);
    return r;
}

U256 shl(const U256& a, unsigned bits) {
    assert(bits < 256);
    U256 r;
    unsigned limb_shift = bits / 64, bit_shift = bits % 64;
    for (int i = 3; i >= 0; --i) {
        uint64_t v = 0;
        int src = i - int(limb_shift);
        if (src >= 0) {
            v = a.w[src] << bit_shift;
            if (bit_shift != 0 && src > 0) v |= a.w[src - 1] >> (64 - bit_shift);
        }
        r.w[i] = v;
    }
    return r;
}

U256 addmod(const U256& a, const U256& b, const U256& m) {
    uint64_t carry;
    U256 s = add(a, b, carry);
    if (carry || s >= m) {
        uint64_t borrow;
        s = sub(s, m, borrow);
    }
    return s;
}

U256 submod(const U256& a, const U256& b, const U256& m) {
    uint64_t borrow;
    U256 d = sub(a, b, borrow);
    if (borrow) {
        uint64_t carry;
        d = add(d, m, carry);
    }
    return d;
}

U256 mulmod(const U256& a, const U256& b, const U256& m) {
    U256 result;  // zero
    int top = b.top_bit();
    for (int i = top; i >= 0; --i) {
        result = addmod(result, result, m);
        if (b.bit(unsigned(i))) result = addmod(result, a, m);
    }
    return result;
}

// Binary extended Euclid for odd modulus (HAC 14.61 variant). The helper
// halves x1 modulo m: when x1 is odd, (x1 + m) is even and may carry past
// 2^256, so the carry bit is shifted back in.
namespace {
U256 half_mod(const U256& x, const U256& m) {
    if (x.is_even()) return shr1(x);
    uint64_t carry;
    U256 t = add(x, m, carry);
    return shr1(t, carry);
}
}  // namespace

U256 invmod(const U256& a, const U256& m) {
    if (a.is_zero()) raise(Errc::ValidationError, "invmod of zero");
    U256 u = a, v = m;
    U256 x1 = U256::from_u64(1), x2;  // x2 = 0
    while (!(u == U256::from_u64(1)) && !(v == U256::from_u64(1))) {
        while (u.is_even()) {
            u = shr1(u);
            x1 = half_mod(x1, m);
        }
        while (v.is_even()) {
            v = shr1(v);
            x2 = half_mod(x2, m);
        }
        uint64_t borrow;
        if (u >= v) {
            u = sub(u, v, borrow);
            x1 = submod(x1, x2, m);
        } else {
            v = sub(v, u, borrow);
            x2 = submod(x2, x1, m);
        }
    }
    return (u == U256::from_u64(1)) ? x1 : x2;
}

}  // namespace puft
