#pragma once

#include <cstdint>
#include <vector>

#include "mabcvk/errors.hpp"
#include "mabcvk/rng.hpp"

namespace mabcvk {

// Largest n the divisor enumeration will factor by trial division.
inline constexpr std::uint64_t default_factor_bound = std::uint64_t{1} << 40;

// (a * b) mod m without overflow; all 64-bit inputs are exact.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

// base^exponent mod modulus by square-and-multiply. Throws invalid_modulus_error
// for modulus < 2.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

// a^(p-2) mod p for prime p. Throws no_inverse_error when a == 0 mod p.
// Primality of p is the caller's contract (checked by assert in debug builds).
std::uint64_t mod_inverse_fermat(std::uint64_t a, std::uint64_t p);

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

// All divisors of n in ascending order. n must be >= 1 and <= bound
// (capacity_error names the bound otherwise).
std::vector<std::uint64_t> divisors(std::uint64_t n,
                                    std::uint64_t bound = default_factor_bound);

// Uniform prime with exactly `bits` bits, 3 <= bits <= 64. Throws
// generation_error after max_attempts failed draws.
std::uint64_t random_prime(unsigned bits, SplitMix64& rng,
                           unsigned max_attempts = 65536);

// pi(n) ~ n / ln n. Domain: n >= 2 (real-valued so estimates reach 2^128).
double prime_count_estimate(double n);

// Every prime < limit, by sieve.
std::vector<std::uint64_t> primes_below(std::uint64_t limit);

}  // namespace mabcvk
