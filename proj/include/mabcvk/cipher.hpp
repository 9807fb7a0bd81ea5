#pragma once

#include <cstdint>
#include <vector>

#include "mabcvk/keys.hpp"
#include "mabcvk/rng.hpp"

namespace mabcvk {

// All legal substitutions for one plaintext block: the divisors a of (k2 - p)
// with p < a < k1. Each satisfies k2 mod a = p, which is what decryption uses
// to get p back.
struct CandidateSet {
    std::uint32_t p = 0;
    std::vector<std::uint64_t> values;  // ascending
};

// Non-throwing enumeration; empty result means p cannot be encrypted.
std::vector<std::uint64_t> enumerate_candidates(std::uint32_t p,
                                                std::uint64_t k1,
                                                std::uint64_t k2);

// Throws empty_candidate_error (carrying p) when the set is empty.
CandidateSet candidates(std::uint32_t p, const CipherContext& ctx);

// Intermediates of one block encryption, for inspection:
//   b = a^k3 mod k1, c = b * k2, d = c^k3 mod k1.
struct BlockTrace {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    __uint128_t c = 0;
    std::uint64_t d = 0;
};

BlockTrace trace_encrypt_block(std::uint32_t p, const CipherContext& ctx,
                               std::uint64_t a);

// Encrypts p using substitution a, which must be a member of candidates(p).
std::uint64_t encrypt_block(std::uint32_t p, const CipherContext& ctx,
                            std::uint64_t a);

// Encrypts p with a uniformly drawn substitution.
std::uint64_t encrypt_block_random(std::uint32_t p, const CipherContext& ctx,
                                   SplitMix64& rng);

// Inverts one cipher block: b = (d*k2)^k3 mod k1, a = b^k3 mod k1, p = k2 mod a.
// d outside [1, k1) or an intermediate of 0 is corrupt data; a recovered value
// >= 2^w means corrupt data or the wrong key.
std::uint32_t decrypt_block(std::uint64_t d, const CipherContext& ctx);

// Offset used to rotate a block sequence of length n: round-half-up of
// alpha * n, reduced mod n. Exact rational arithmetic; 0 when n < 2.
std::size_t rotation_offset(std::uint64_t alpha_num, std::uint64_t alpha_den,
                            std::size_t n);

enum class Rotate { left, right };

// Cyclic rotation by k positions. Left: out[i] = in[(i + k) mod n].
// rotate(rotate(s, k, left), k, right) == s.
std::vector<std::uint64_t> rotate_sequence(const std::vector<std::uint64_t>& blocks,
                                           std::size_t k, Rotate direction);

}  // namespace mabcvk
