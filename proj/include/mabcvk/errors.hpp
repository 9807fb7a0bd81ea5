#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mabcvk {

// Base class for every failure this library reports.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside a function's domain (bad modulus, n = 0, ...).
struct domain_error : error {
    using error::error;
};

struct invalid_modulus_error : domain_error {
    using domain_error::domain_error;
};

// Residue has no inverse (a == 0 mod p).
struct no_inverse_error : error {
    using error::error;
};

// Input exceeds a configured work bound.
struct capacity_error : error {
    capacity_error(const std::string& msg, std::uint64_t bound_)
        : error(msg), bound(bound_) {}
    std::uint64_t bound;
};

// ---- key material problems: CLI exit code 2 ----

struct key_error : error {
    using error::error;
};

struct key_parse_error : key_error {
    using key_error::key_error;
};

struct non_prime_key_error : key_error {
    using key_error::key_error;
};

struct alpha_range_error : key_error {
    using key_error::key_error;
};

struct key_order_error : key_error {
    using key_error::key_error;
};

struct block_width_error : key_error {
    using key_error::key_error;
};

struct generation_error : key_error {
    generation_error(const std::string& msg, std::uint64_t attempts_)
        : key_error(msg), attempts(attempts_) {}
    std::uint64_t attempts;
};

// Block value that no substitution can encrypt under the given key/width.
struct empty_candidate_error : key_error {
    empty_candidate_error(const std::string& msg, std::uint64_t block_value_)
        : key_error(msg), block_value(block_value_) {}
    std::uint64_t block_value;
};

// Caller supplied a substitution outside the candidate set.
struct invalid_substitution_error : error {
    using error::error;
};

// ---- malformed or corrupt data: CLI exit code 3 ----

struct data_error : error {
    using error::error;
};

struct bad_magic_error : data_error {
    using data_error::data_error;
};

struct format_error : data_error {
    using data_error::data_error;
};

struct corrupt_block_error : data_error {
    using data_error::data_error;
};

// Decryption produced a value that cannot come from a well-formed plaintext.
struct wrong_key_error : data_error {
    using data_error::data_error;
};

}  // namespace mabcvk
