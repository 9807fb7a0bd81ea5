#include "mabcvk/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "mabcvk/cipher.hpp"
#include "mabcvk/modmath.hpp"
#include "mabcvk/rng.hpp"

namespace mabcvk {

KeyspaceRow crack_time(unsigned key_bits, double rate_per_microsecond) {
    if (key_bits < 1 || key_bits > 1024)
        throw domain_error("crack_time: key_bits must be in [1, 1024]");
    if (!(rate_per_microsecond > 0))
        throw domain_error("crack_time: rate must be positive");
    KeyspaceRow row;
    row.key_bits = key_bits;
    row.alternative_keys = std::ldexp(1.0, static_cast<int>(key_bits));
    row.rate_per_us = rate_per_microsecond;
    // half the keyspace on average, one key per 1/rate microseconds
    row.avg_crack_seconds = std::ldexp(1.0, static_cast<int>(key_bits) - 1) /
                            rate_per_microsecond * 1e-6;
    return row;
}

std::string render_duration(double seconds) {
    const char* unit = "microseconds";
    double value = seconds * 1e6;
    if (seconds >= seconds_per_year) {
        unit = "years";
        value = seconds / seconds_per_year;
    } else if (seconds >= 86400) {
        unit = "days";
        value = seconds / 86400;
    } else if (seconds >= 3600) {
        unit = "hours";
        value = seconds / 3600;
    } else if (seconds >= 60) {
        unit = "minutes";
        value = seconds / 60;
    } else if (seconds >= 1) {
        unit = "seconds";
        value = seconds;
    } else if (seconds >= 1e-3) {
        unit = "milliseconds";
        value = seconds * 1e3;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g %s", value, unit);
    return buf;
}

PrimeKeyspaceReport prime_keyspace_report(unsigned key_bits,
                                          double checks_per_second) {
    if (key_bits < 1 || key_bits > 1024)
        throw domain_error("prime_keyspace_report: key_bits must be in [1, 1024]");
    if (!(checks_per_second > 0))
        throw domain_error("prime_keyspace_report: rate must be positive");
    PrimeKeyspaceReport rep;
    rep.key_bits = key_bits;
    rep.checks_per_second = checks_per_second;
    rep.prime_count =
        prime_count_estimate(std::ldexp(1.0, static_cast<int>(key_bits)));
    rep.years_to_exhaust =
        rep.prime_count / checks_per_second / seconds_per_year;
    return rep;
}

RandomizationReport randomization_report(const CipherContext& ctx,
                                         std::span<const std::uint8_t> sample,
                                         unsigned trials, std::uint64_t seed) {
    if (trials == 0)
        throw domain_error("randomization_report: trials must be >= 1");
    const std::vector<std::uint32_t> values =
        split_blocks(sample, ctx.block_width);
    std::map<std::uint32_t, std::uint64_t> occurrences;
    for (std::uint32_t v : values) occurrences[v]++;

    RandomizationReport rep;
    rep.min_coverage = occurrences.empty() ? 0.0 : 1.0;
    SplitMix64 rng(seed);
    for (const auto& [value, count] : occurrences) {
        const CandidateSet set = candidates(value, ctx);
        std::vector<std::uint64_t> cipher_of(set.values.size());
        for (std::size_t j = 0; j < set.values.size(); ++j)
            cipher_of[j] = encrypt_block(value, ctx, set.values[j]);

        std::set<std::uint64_t> seen;
        const std::uint64_t draws = count * trials;
        for (std::uint64_t i = 0; i < draws; ++i) {
            seen.insert(cipher_of[rng.below(cipher_of.size())]);
            if (seen.size() == cipher_of.size()) break;  // every candidate hit
        }

        RandomizationEntry entry;
        entry.value = value;
        entry.occurrences = count;
        entry.candidate_count = set.values.size();
        entry.distinct_observed = seen.size();
        entry.coverage = static_cast<double>(entry.distinct_observed) /
                         static_cast<double>(entry.candidate_count);
        rep.count_histogram[entry.candidate_count]++;
        rep.min_coverage = std::min(rep.min_coverage, entry.coverage);
        rep.entries.push_back(entry);
    }
    return rep;
}

LinearFit least_squares_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw domain_error("least_squares_fit: need two or more points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0)
        throw domain_error("least_squares_fit: x values are all equal");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += e * e;
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

BenchReport bench(std::span<const std::size_t> sizes_kb,
                  const CipherContext& ctx, std::uint64_t seed,
                  PayloadFormat format) {
    using clock = std::chrono::steady_clock;
    BenchReport rep;
    SplitMix64 rng(seed);

    // One small untimed round warms caches and the candidate table.
    {
        std::vector<std::uint8_t> warm(1024);
        for (auto& b : warm) b = static_cast<std::uint8_t>(rng.next());
        decrypt_file(encrypt_file(warm, ctx, format, rng.next()), ctx);
    }

    for (std::size_t kb : sizes_kb) {
        std::vector<std::uint8_t> plain(kb * 1024);
        for (auto& b : plain) b = static_cast<std::uint8_t>(rng.next());

        const auto t0 = clock::now();
        const std::vector<std::uint8_t> enc =
            encrypt_file(plain, ctx, format, rng.next());
        const auto t1 = clock::now();
        const std::vector<std::uint8_t> dec = decrypt_file(enc, ctx);
        const auto t2 = clock::now();
        if (dec != plain) throw error("bench: round-trip mismatch");

        BenchRow row;
        row.size_kb = kb;
        row.encrypt_seconds = std::chrono::duration<double>(t1 - t0).count();
        row.decrypt_seconds = std::chrono::duration<double>(t2 - t1).count();
        rep.rows.push_back(row);
    }

    std::vector<double> x, ye, yd;
    for (const BenchRow& r : rep.rows) {
        x.push_back(static_cast<double>(r.size_kb));
        ye.push_back(r.encrypt_seconds);
        yd.push_back(r.decrypt_seconds);
    }
    const bool distinct_x =
        x.size() >= 2 && !std::equal(x.begin() + 1, x.end(), x.begin());
    if (distinct_x) {
        rep.encrypt_fit = least_squares_fit(x, ye);
        rep.decrypt_fit = least_squares_fit(x, yd);
    }
    return rep;
}

BruteForceResult brute_force_recover(std::span<const std::uint8_t> known_plain,
                                     std::span<const std::uint8_t> container,
                                     unsigned max_key_bits) {
    if (max_key_bits < 4 || max_key_bits > 20)
        throw domain_error("brute_force_recover: max_key_bits must be in [4, 20]");
    const ContainerHeader h = parse_header(container);
    if (h.original_length_bits != std::uint64_t{8} * known_plain.size())
        throw domain_error(
            "brute_force_recover: known plaintext length does not match the "
            "container");
    const unsigned w = h.block_width;
    const auto payload = container.subspan(container_header_size);
    const std::vector<std::uint32_t> known_blocks = split_blocks(known_plain, w);
    const std::uint64_t n = h.block_count;

    const std::vector<std::uint64_t> primes =
        primes_below(std::uint64_t{1} << max_key_bits);
    BruteForceResult res;
    res.prime_count = primes.size();
    res.pair_count = primes.size() * (primes.size() - 1) / 2;

    // Rotation offsets only depend on alpha and N; precompute the grid.
    std::size_t offsets[9];
    for (unsigned i = 1; i <= 9; ++i)
        offsets[i - 1] = rotation_offset(i, 10, static_cast<std::size_t>(n));

    // Payload decoding depends on k1 only through the packed bit width, so
    // cache the decode per width as k1 ascends.
    std::vector<std::uint64_t> payload_blocks;
    unsigned decoded_width = 0;
    bool decoded_ok = false;
    std::uint64_t max_block = 0, min_block = 0;

    std::vector<std::uint32_t> trial(known_blocks.size());
    for (std::size_t i1 = 0; i1 < primes.size(); ++i1) {
        const std::uint64_t k1 = primes[i1];
        if ((std::uint64_t{1} << w) >= k1) continue;

        if (h.format == PayloadFormat::wide32) {
            if (!decoded_ok) {
                if (__uint128_t{4} * n != payload.size())
                    throw format_error("truncated payload");
                payload_blocks = decode_wide32(payload);
                max_block = 0;
                min_block = ~std::uint64_t{0};
                for (std::uint64_t b : payload_blocks) {
                    max_block = std::max(max_block, b);
                    min_block = std::min(min_block, b);
                }
                decoded_ok = true;
                decoded_width = 32;
            }
            if (n > 0 && min_block == 0) return res;  // no key can emit block 0
        } else {
            const unsigned bits = packed_bits_per_block(k1);
            if (bits != decoded_width) {
                decoded_width = bits;
                decoded_ok = (__uint128_t{bits} * n + 7) / 8 == payload.size();
                if (decoded_ok) {
                    payload_blocks =
                        decode_packed(payload, n, CipherContext{k1, 0, 0, 1, 10, w});
                    max_block = 0;
                    min_block = ~std::uint64_t{0};
                    for (std::uint64_t b : payload_blocks) {
                        max_block = std::max(max_block, b);
                        min_block = std::min(min_block, b);
                    }
                }
            }
            if (!decoded_ok) continue;       // payload size rules this width out
            if (n > 0 && min_block == 0) continue;  // block 0 impossible
        }
        // Every cipher block must lie in [1, k1).
        if (n > 0 && max_block >= k1) continue;

        for (std::size_t i2 = i1 + 1; i2 < primes.size(); ++i2) {
            const std::uint64_t k2 = primes[i2];
            const CipherContext ctx{k1, k2, k1 - 2, 1, 10, w};
            res.keys_tried += 9;
            bool pair_ok = true;
            for (std::size_t j = 0; j < payload_blocks.size(); ++j) {
                try {
                    trial[j] = decrypt_block(payload_blocks[j], ctx);
                } catch (const data_error&) {
                    pair_ok = false;
                    break;
                }
            }
            if (!pair_ok) continue;
            // trial[j] decrypts payload position j; the stored order is the
            // plain order rotated left by the alpha offset, so plain position
            // j reads payload position (j + n - k) mod n.
            for (unsigned ai = 0; ai < 9; ++ai) {
                const std::size_t k = offsets[ai];
                const std::size_t count = trial.size();
                bool match = true;
                for (std::size_t j = 0; j < count && match; ++j)
                    match = trial[(j + count - k) % count] == known_blocks[j];
                if (match) {
                    res.key = KeyPair{k1, k2, ai + 1, 10};
                    return res;
                }
            }
        }
    }
    return res;
}

}  // namespace mabcvk
