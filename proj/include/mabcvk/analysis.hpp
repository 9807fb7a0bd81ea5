#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mabcvk/container.hpp"
#include "mabcvk/keys.hpp"

namespace mabcvk {

// Julian year; the unit used for every "years" figure below.
inline constexpr double seconds_per_year = 31557600.0;

struct KeyspaceRow {
    unsigned key_bits = 0;
    double alternative_keys = 0;    // 2^key_bits
    double rate_per_us = 1;         // keys tried per microsecond
    double avg_crack_seconds = 0;   // half the keyspace at that rate
};

// Expected brute-force time: (2^(bits-1) / rate) microseconds, in seconds.
KeyspaceRow crack_time(unsigned key_bits, double rate_per_microsecond);

// "1142 years", "10.01 hours", ... 4 significant digits, largest natural unit.
std::string render_duration(double seconds);

struct PrimeKeyspaceReport {
    unsigned key_bits = 0;
    double checks_per_second = 0;
    double prime_count = 0;       // n / ln n at n = 2^bits
    double years_to_exhaust = 0;
};

PrimeKeyspaceReport prime_keyspace_report(unsigned key_bits,
                                          double checks_per_second);

struct RandomizationEntry {
    std::uint32_t value = 0;            // plaintext block value
    std::uint64_t occurrences = 0;      // blocks of the sample holding it
    std::uint64_t candidate_count = 0;  // size of its substitution set
    std::uint64_t distinct_observed = 0;
    double coverage = 0;                // distinct_observed / candidate_count
};

struct RandomizationReport {
    std::vector<RandomizationEntry> entries;  // ascending by value
    // candidate-set size -> number of distinct plaintext values with that size
    std::map<std::uint64_t, std::uint64_t> count_histogram;
    double min_coverage = 0;
};

// Encrypts the sample `trials` times with fresh randomness and counts the
// distinct cipher blocks seen per plaintext value. distinct_observed never
// exceeds candidate_count; coverage tends to 1 as trials grow.
RandomizationReport randomization_report(const CipherContext& ctx,
                                         std::span<const std::uint8_t> sample,
                                         unsigned trials, std::uint64_t seed);

struct BenchRow {
    std::size_t size_kb = 0;
    double encrypt_seconds = 0;
    double decrypt_seconds = 0;
};

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::optional<LinearFit> encrypt_fit;  // absent with fewer than 2 sizes
    std::optional<LinearFit> decrypt_fit;
};

// Least squares y = slope*x + intercept with the coefficient of determination.
LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y);

// Round-trips random data of each size through the full pipeline and times
// both directions with a monotonic clock.
BenchReport bench(std::span<const std::size_t> sizes_kb, const CipherContext& ctx,
                  std::uint64_t seed, PayloadFormat format = PayloadFormat::wide32);

struct BruteForceResult {
    std::optional<KeyPair> key;     // smallest (k1, k2, alpha) that decrypts
    std::uint64_t prime_count = 0;  // primes below 2^max_key_bits
    std::uint64_t pair_count = 0;   // C(prime_count, 2)
    std::uint64_t keys_tried = 0;   // (k1, k2, alpha) decrypt attempts made
};

// Known-plaintext search over every prime pair below 2^max_key_bits and the
// alpha grid {1/10 .. 9/10}, in ascending (k1, k2, alpha) order; the first
// key whose decryption reproduces known_plain wins. max_key_bits <= 20.
// The block width comes from the container header.
BruteForceResult brute_force_recover(std::span<const std::uint8_t> known_plain,
                                     std::span<const std::uint8_t> container,
                                     unsigned max_key_bits);

}  // namespace mabcvk
