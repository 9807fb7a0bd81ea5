#include "mabcvk/modmath.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace mabcvk {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent,
                      std::uint64_t modulus) {
    if (modulus < 2)
        throw invalid_modulus_error("mod_pow: modulus must be >= 2");
    std::uint64_t result = 1;
    base %= modulus;
    while (exponent != 0) {
        if (exponent & 1) result = mul_mod(result, base, modulus);
        base = mul_mod(base, base, modulus);
        exponent >>= 1;
    }
    return result;
}

std::uint64_t mod_inverse_fermat(std::uint64_t a, std::uint64_t p) {
    assert(is_prime(p));
    if (p < 2) throw invalid_modulus_error("mod_inverse_fermat: modulus must be >= 2");
    a %= p;
    if (a == 0)
        throw no_inverse_error("mod_inverse_fermat: 0 has no inverse");
    return mod_pow(a, p - 2, p);
}

namespace {

// One Miller-Rabin round; n odd, n - 1 = d * 2^r.
bool composite_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    // Witness set proven exact for n < 3.3e24, which covers all 64-bit inputs.
    constexpr std::uint64_t witnesses[] = {2,  3,  5,  7,  11, 13,
                                           17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (std::uint64_t w : witnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t w : witnesses)
        if (composite_witness(n, w, d, r)) return false;
    return true;
}

std::vector<std::uint64_t> divisors(std::uint64_t n, std::uint64_t bound) {
    if (n == 0) throw domain_error("divisors: n must be >= 1");
    if (n > bound)
        throw capacity_error("divisors: n exceeds the factorization bound " +
                                 std::to_string(bound),
                             bound);
    std::vector<std::uint64_t> low, high;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        low.push_back(i);
        if (i != n / i) high.push_back(n / i);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

std::uint64_t random_prime(unsigned bits, SplitMix64& rng, unsigned max_attempts) {
    if (bits < 3 || bits > 64)
        throw domain_error("random_prime: bits must be in [3, 64]");
    const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        std::uint64_t candidate = lo | rng.below(lo) | 1;
        if (is_prime(candidate)) return candidate;
    }
    throw generation_error("random_prime: no prime found in " +
                               std::to_string(max_attempts) + " attempts",
                           max_attempts);
}

double prime_count_estimate(double n) {
    if (!(n >= 2)) throw domain_error("prime_count_estimate: n must be >= 2");
    return n / std::log(n);
}

std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
    constexpr std::uint64_t sieve_bound = std::uint64_t{1} << 28;
    if (limit > sieve_bound)
        throw capacity_error("primes_below: limit exceeds the sieve bound " +
                                 std::to_string(sieve_bound),
                             sieve_bound);
    std::vector<std::uint64_t> out;
    if (limit <= 2) return out;
    std::vector<bool> composite(limit, false);
    for (std::uint64_t i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j < limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace mabcvk
