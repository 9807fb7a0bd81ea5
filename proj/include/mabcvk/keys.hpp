#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mabcvk/errors.hpp"
#include "mabcvk/rng.hpp"

namespace mabcvk {

// Private key material. Invariants: k1 and k2 prime, k1 < k2, and
// 1/10 <= alpha_num/alpha_den <= 9/10 with the fraction kept exactly as given.
struct KeyPair {
    std::uint64_t k1 = 0;
    std::uint64_t k2 = 0;
    std::uint64_t alpha_num = 0;
    std::uint64_t alpha_den = 1;

    bool operator==(const KeyPair&) const = default;
};

// A key pair plus the block width it was produced (and validated) for; this is
// what the key file stores.
struct KeyFile {
    KeyPair pair;
    unsigned block_width = 8;

    bool operator==(const KeyFile&) const = default;
};

// Working state for the cipher. k3 = k1 - 2, the exponent that inverts mod k1.
struct CipherContext {
    std::uint64_t k1 = 0;
    std::uint64_t k2 = 0;
    std::uint64_t k3 = 0;
    std::uint64_t alpha_num = 0;
    std::uint64_t alpha_den = 1;
    unsigned block_width = 8;
};

struct ValidationReport {
    bool valid = false;
    // First failing block in scan order. The scan runs from the top of the
    // block range downward, so this is the largest block with no candidates.
    std::optional<std::uint32_t> first_failing_block;
    std::uint64_t candidate_count_min = 0;
    // candidate-set size -> how many block values have that size
    std::map<std::uint64_t, std::uint64_t> candidate_count_histogram;
};

// Throws the specific key_error subclass for whichever invariant fails.
void check_keypair(const KeyPair& kp);

// Builds the cipher context; requires 1 <= w <= 32 and 2^w < k1.
CipherContext make_context(const KeyPair& kp, unsigned block_width);

// Exhaustively checks that every block value in [0, 2^w) has at least one
// substitution candidate. Scans descending and never throws for a merely
// unusable pair - the report carries the verdict.
ValidationReport validate_keypair(const KeyPair& kp, unsigned block_width);

// Draws prime pairs of exactly `bits` bits until one validates at the given
// width. Each drawn pair counts as one attempt; throws generation_error with
// the attempt count when the budget runs out.
KeyPair generate_keypair(unsigned bits, std::uint64_t alpha_num,
                         std::uint64_t alpha_den, unsigned block_width,
                         SplitMix64& rng, unsigned max_attempts = 10000);

// Canonical text form:
//   MABCVK-KEY 1
//   k1=<decimal>
//   k2=<decimal>
//   alpha=<num>/<den>
//   width=<w>
// each line newline-terminated, nothing else. parse(serialize(k)) == k exactly,
// alpha fraction included.
std::string serialize_key(const KeyFile& key);
KeyFile parse_key(std::string_view text);

}  // namespace mabcvk
