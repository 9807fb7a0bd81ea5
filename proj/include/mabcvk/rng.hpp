#pragma once

#include <cstdint>
#include <random>

namespace mabcvk {

// SplitMix64. Small, fast, and the output sequence is fixed by the standard
// constants, so seeded runs are reproducible across platforms — unlike
// std::uniform_int_distribution, whose mapping is implementation-defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased draw from [0, bound) via masked rejection. bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            std::uint64_t v = next() & mask;
            if (v < bound) return v;
        }
    }

    // Independent stream for one block: the same (seed, index) pair yields the
    // same stream no matter how work is split across threads or runs.
    static SplitMix64 for_block(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 ix(index);
        return SplitMix64(seed ^ ix.next());
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t entropy_seed() {
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) ^ rd();
}

}  // namespace mabcvk
