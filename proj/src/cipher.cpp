#include "mabcvk/cipher.hpp"

#include <string>

#include "mabcvk/modmath.hpp"

namespace mabcvk {

std::vector<std::uint64_t> enumerate_candidates(std::uint32_t p,
                                                std::uint64_t k1,
                                                std::uint64_t k2) {
    std::vector<std::uint64_t> out;
    // Candidates live in the open interval (p, k1); nothing fits once p
    // reaches k1 - 1, and k2 - p cannot underflow below that point.
    if (std::uint64_t{p} + 1 >= k1) return out;
    for (std::uint64_t d : divisors(k2 - p))
        if (d > p && d < k1) out.push_back(d);
    return out;
}

CandidateSet candidates(std::uint32_t p, const CipherContext& ctx) {
    CandidateSet set{p, enumerate_candidates(p, ctx.k1, ctx.k2)};
    if (set.values.empty())
        throw empty_candidate_error(
            "no substitution candidates for block value " + std::to_string(p) +
                " under this key",
            p);
    return set;
}

namespace {

bool is_candidate(std::uint32_t p, const CipherContext& ctx, std::uint64_t a) {
    return a > p && a < ctx.k1 && (ctx.k2 - p) % a == 0;
}

}  // namespace

BlockTrace trace_encrypt_block(std::uint32_t p, const CipherContext& ctx,
                               std::uint64_t a) {
    if (!is_candidate(p, ctx, a))
        throw invalid_substitution_error(
            "substitution " + std::to_string(a) +
            " is not a candidate for block value " + std::to_string(p));
    BlockTrace t;
    t.a = a;
    t.b = mod_pow(a, ctx.k3, ctx.k1);
    t.c = static_cast<__uint128_t>(t.b) * ctx.k2;
    // c mod k1 first; the final exponentiation is unchanged by the reduction.
    t.d = mod_pow(static_cast<std::uint64_t>(t.c % ctx.k1), ctx.k3, ctx.k1);
    return t;
}

std::uint64_t encrypt_block(std::uint32_t p, const CipherContext& ctx,
                            std::uint64_t a) {
    return trace_encrypt_block(p, ctx, a).d;
}

std::uint64_t encrypt_block_random(std::uint32_t p, const CipherContext& ctx,
                                   SplitMix64& rng) {
    const CandidateSet set = candidates(p, ctx);
    const std::uint64_t a = set.values[rng.below(set.values.size())];
    return encrypt_block(p, ctx, a);
}

std::uint32_t decrypt_block(std::uint64_t d, const CipherContext& ctx) {
    if (d == 0 || d >= ctx.k1)
        throw corrupt_block_error("cipher block " + std::to_string(d) +
                                  " outside [1, k1)");
    const std::uint64_t t = mul_mod(d, ctx.k2 % ctx.k1, ctx.k1);
    if (t == 0)
        throw corrupt_block_error("cipher block " + std::to_string(d) +
                                  " collapses to 0 mod k1");
    const std::uint64_t b = mod_pow(t, ctx.k3, ctx.k1);
    const std::uint64_t a = mod_pow(b, ctx.k3, ctx.k1);
    const std::uint64_t p = ctx.k2 % a;
    if (p >= (std::uint64_t{1} << ctx.block_width))
        throw wrong_key_error("decrypted value " + std::to_string(p) +
                              " exceeds the block width (corrupt data or wrong key)");
    return static_cast<std::uint32_t>(p);
}

std::size_t rotation_offset(std::uint64_t alpha_num, std::uint64_t alpha_den,
                            std::size_t n) {
    if (n < 2) return 0;
    // round-half-up(num*n / den) = floor((2*num*n + den) / (2*den)), exactly.
    const __uint128_t numerator = __uint128_t{2} * alpha_num * n + alpha_den;
    const __uint128_t k = numerator / (__uint128_t{2} * alpha_den);
    return static_cast<std::size_t>(k % n);
}

std::vector<std::uint64_t> rotate_sequence(const std::vector<std::uint64_t>& blocks,
                                           std::size_t k, Rotate direction) {
    const std::size_t n = blocks.size();
    std::vector<std::uint64_t> out(n);
    if (n == 0) return out;
    k %= n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src =
            direction == Rotate::left ? (i + k) % n : (i + n - k) % n;
        out[i] = blocks[src];
    }
    return out;
}

}  // namespace mabcvk
