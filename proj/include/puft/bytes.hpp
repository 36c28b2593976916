// Copyright (c) 2026 The Puft developers
// Distributed under the MIT software license, see the accompanying
// file LICENSE or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace puft {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;
using Hash256 = std::array<uint8_t, 32>;

// Big-endian integer serialization. All on-wire integers in this project are
// fixed-width big-endian; floats travel as the big-endian bytes of their
// IEEE-754 bit pattern.

inline void put_u32_be(Bytes& out, uint32_t v) {
    out.push_back(uint8_t(v >> 24));
    out.push_back(uint8_t(v >> 16));
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

inline void put_u64_be(Bytes& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(uint8_t(v >> shift));
}

inline void put_f64_be(Bytes& out, double v) {
    put_u64_be(out, std::bit_cast<uint64_t>(v));
}

inline void put_bytes(Bytes& out, ByteSpan data) {
    out.insert(out.end(), data.begin(), data.end());
}

inline uint32_t read_u32_be(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

inline uint64_t read_u64_be(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

inline double read_f64_be(const uint8_t* p) {
    return std::bit_cast<double>(read_u64_be(p));
}

std::string to_hex(ByteSpan data);
inline std::string to_hex(const Hash256& h) { return to_hex(ByteSpan(h.data(), h.size())); }

// Strict hex decoding: even length, [0-9a-fA-F] only. Returns false on any
// malformed input instead of throwing so parsers can report context.
bool from_hex(std::string_view hex, Bytes& out);
Bytes from_hex_or_throw(std::string_view hex);

}  // namespace puft
