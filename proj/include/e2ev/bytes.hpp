#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace e2ev {

using Bytes = std::vector<uint8_t>;

/** Lowercase hex of a byte string. */
inline std::string to_hex(const uint8_t* data, size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (size_t i = 0; i < len; i++) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0x0f]);
    }
    return out;
}

inline std::string to_hex(const Bytes& b) {
    return to_hex(b.data(), b.size());
}

/**
 * Strict inverse of to_hex: even length, lowercase [0-9a-f] only.
 * Throws std::invalid_argument otherwise. Uppercase is rejected so that
 * every byte string has exactly one encoding.
 */
inline Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("hex: odd length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw std::invalid_argument(std::string("hex: bad character '") + c + "'");
    };
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        out.push_back(static_cast<uint8_t>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
    }
    return out;
}

/** 64-bit big-endian length/sequence encoding used in every hash input. */
inline void put_u64be(Bytes& out, uint64_t v) {
    for (int i = 7; i >= 0; i--) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

inline Bytes u64be(uint64_t v) {
    Bytes out;
    out.reserve(8);
    put_u64be(out, v);
    return out;
}

inline void append_bytes(Bytes& out, const Bytes& b) {
    out.insert(out.end(), b.begin(), b.end());
}

inline void append_bytes(Bytes& out, const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
}

}  // namespace e2ev
