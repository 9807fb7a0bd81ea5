#pragma once
// Slow reference implementations, deliberately written by a different route
// than the library so the two can cross-check each other.
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// Extended Euclid; returns x with a*x = 1 (mod m), or 0 when none exists.
inline std::uint64_t inverse(std::uint64_t a, std::uint64_t m) {
    __int128 r = m, new_r = a % m, t = 0, new_t = 1;
    while (new_r != 0) {
        const __int128 q = r / new_r;
        const __int128 tmp_t = t - q * new_t;
        t = new_t;
        new_t = tmp_t;
        const __int128 tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) return 0;
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Literal scan over every candidate divisor.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

// b plain multiplications - no squaring shortcut. Keep b small.
inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    unsigned __int128 r = 1 % m;
    for (std::uint64_t i = 0; i < b; ++i) r = r * (a % m) % m;
    return static_cast<std::uint64_t>(r);
}

// Substitutions for block p under (k1, k2): every d in (p, k1) with
// k2 mod d = p.
inline std::vector<std::uint64_t> candidates(std::uint32_t p, std::uint64_t k1,
                                             std::uint64_t k2) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = std::uint64_t{p} + 1; d < k1; ++d)
        if (k2 % d == p) out.push_back(d);
    return out;
}

// ---- bit packing through explicit '0'/'1' strings ----

inline std::string bits_of_bytes(const std::vector<std::uint8_t>& bytes) {
    std::string s;
    for (std::uint8_t b : bytes)
        for (int i = 7; i >= 0; --i) s += ((b >> i) & 1) ? '1' : '0';
    return s;
}

inline std::string bits_of_value(std::uint64_t v, unsigned width) {
    std::string s;
    for (int i = static_cast<int>(width) - 1; i >= 0; --i)
        s += ((v >> i) & 1) ? '1' : '0';
    return s;
}

// Pads to a whole byte with zeros, then packs 8 bits at a time.
inline std::vector<std::uint8_t> bytes_of_bits(std::string bits) {
    while (bits.size() % 8 != 0) bits += '0';
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < bits.size(); i += 8) {
        std::uint8_t b = 0;
        for (int j = 0; j < 8; ++j)
            b = static_cast<std::uint8_t>((b << 1) | (bits[i + j] == '1'));
        out.push_back(b);
    }
    return out;
}

// Byte stream -> width-bit values, zero-padding the tail.
inline std::vector<std::uint32_t> split_bits(const std::vector<std::uint8_t>& data,
                                             unsigned width) {
    std::string bits = bits_of_bytes(data);
    while (bits.size() % width != 0) bits += '0';
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < bits.size(); i += width) {
        std::uint32_t v = 0;
        for (unsigned j = 0; j < width; ++j)
            v = (v << 1) | (bits[i + j] == '1');
        out.push_back(v);
    }
    return out;
}

}  // namespace oracle
