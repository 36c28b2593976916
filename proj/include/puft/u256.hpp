// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "puft/bytes.hpp"

namespace puft {

// Unsigned 256-bit integer, little-endian limbs. Used for proof-of-work
// target comparisons, lottery draws, and the elliptic-curve scalar field.
struct U256 {
    std::array<uint64_t, 4> w{};

    static U256 from_u64(uint64_t v) {
        U256 r;
        r.w[0] = v;
        return r;
    }
    static U256 from_be_bytes(const uint8_t* p);
    static U256 from_be_bytes(const Hash256& h) { return from_be_bytes(h.data()); }
    // Hex string of up to 64 nibbles, no 0x prefix.
    static U256 from_hex(std::string_view hex);
    static U256 max() {
        U256 r;
        r.w.fill(~uint64_t(0));
        return r;
    }
    // 2^k for k in [0, 255].
    static U256 pow2(unsigned k) {
        U256 r;
        r.w[k / 64] = uint64_t(1) << (k % 64);
        return r;
    }

    void to_be_bytes(uint8_t* out) const;
    Hash256 to_hash() const {
        Hash256 h;
        to_be_bytes(h.data());
        return h;
    }
    std::string to_hex() const;

    bool is_zero() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
    bool is_even() const { return (w[0] & 1) == 0; }
    bool bit(unsigned i) const { return (w[i / 64] >> (i % 64)) & 1; }
    // Index of highest set bit, or -1 for zero.
    int top_bit() const;

    friend bool operator==(const U256& a, const U256& b) { return a.w == b.w; }
};

int cmp(const U256& a, const U256& b);
inline bool operator<(const U256& a, const U256& b) { return cmp(a, b) < 0; }
inline bool operator<=(const U256& a, const U256& b) { return cmp(a, b) <= 0; }
inline bool operator>(const U256& a, const U256& b) { return cmp(a, b) > 0; }
inline bool operator>=(const U256& a, const U256& b) { return cmp(a, b) >= 0; }

// Plain 256-bit add/sub with carry/borrow out.
U256 add(const U256& a, const U256& b, uint64_t& carry_out);
U256 sub(const U256& a, const U256& b, uint64_t& borrow_out);
// Logical shift right by one with an optional bit shifted into position 255.
U256 shr1(const U256& a, uint64_t carry_in_bit = 0);
U256 shl(const U256& a, unsigned bits);

// Modular arithmetic for odd moduli (operands must already be < m).
U256 addmod(const U256& a, const U256& b, const U256& m);
U256 submod(const U256& a, const U256& b, const U256& m);
// Double-and-add multiply; adequate for the scalar field where only a
// handful of multiplies happen per signature.
U256 mulmod(const U256& a, const U256& b, const U256& m);
// Binary extended Euclid; requires gcd(a, m) = 1 and odd m.
U256 invmod(const U256& a, const U256& m);

}  // namespace puft
