#include "mabcvk/keys.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include "mabcvk/cipher.hpp"
#include "mabcvk/modmath.hpp"

namespace mabcvk {

namespace {

// 10*num and 9*den stay in range for any fraction the parser accepts.
bool alpha_in_range(std::uint64_t num, std::uint64_t den) {
    if (num == 0 || den == 0) return false;
    const __uint128_t ten_num = __uint128_t{10} * num;
    return ten_num >= den && ten_num <= __uint128_t{9} * den;
}

}  // namespace

void check_keypair(const KeyPair& kp) {
    if (!is_prime(kp.k1))
        throw non_prime_key_error("key invalid: k1=" + std::to_string(kp.k1) +
                                  " is not prime");
    if (!is_prime(kp.k2))
        throw non_prime_key_error("key invalid: k2=" + std::to_string(kp.k2) +
                                  " is not prime");
    if (kp.k1 >= kp.k2)
        throw key_order_error("key invalid: k1 must be less than k2");
    if (!alpha_in_range(kp.alpha_num, kp.alpha_den))
        throw alpha_range_error("key invalid: alpha must lie in [1/10, 9/10]");
}

CipherContext make_context(const KeyPair& kp, unsigned block_width) {
    check_keypair(kp);
    if (block_width < 1 || block_width > 32)
        throw block_width_error("block width must be in [1, 32]");
    if ((std::uint64_t{1} << block_width) >= kp.k1)
        throw block_width_error("block width " + std::to_string(block_width) +
                                " too large: 2^w must be below k1=" +
                                std::to_string(kp.k1));
    return CipherContext{kp.k1,        kp.k2,        kp.k1 - 2,
                         kp.alpha_num, kp.alpha_den, block_width};
}

ValidationReport validate_keypair(const KeyPair& kp, unsigned block_width) {
    check_keypair(kp);
    if (block_width < 1 || block_width > 32)
        throw block_width_error("block width must be in [1, 32]");

    ValidationReport report;
    report.valid = true;
    report.candidate_count_min = UINT64_MAX;
    const std::uint64_t top = (std::uint64_t{1} << block_width) - 1;
    // Descending scan: the upper end of the block range is where candidate
    // sets thin out, so an unusable pair is caught almost immediately and the
    // reported block is the largest failing one.
    for (std::uint64_t p = top;; --p) {
        const auto set =
            enumerate_candidates(static_cast<std::uint32_t>(p), kp.k1, kp.k2);
        const std::uint64_t count = set.size();
        report.candidate_count_histogram[count]++;
        report.candidate_count_min = std::min(report.candidate_count_min, count);
        if (count == 0 && report.valid) {
            report.valid = false;
            report.first_failing_block = static_cast<std::uint32_t>(p);
        }
        if (p == 0) break;
    }
    return report;
}

KeyPair generate_keypair(unsigned bits, std::uint64_t alpha_num,
                         std::uint64_t alpha_den, unsigned block_width,
                         SplitMix64& rng, unsigned max_attempts) {
    if (!alpha_in_range(alpha_num, alpha_den))
        throw alpha_range_error("generate_keypair: alpha must lie in [1/10, 9/10]");
    if (block_width < 1 || block_width > 32)
        throw block_width_error("generate_keypair: block width must be in [1, 32]");
    if (bits <= block_width)
        throw key_error("generate_keypair: bits must exceed the block width");
    if (bits > 40)
        throw key_error(
            "generate_keypair: bits must be <= 40 (candidate search factors "
            "k2 - p, bounded at 2^40)");

    for (unsigned attempt = 1; attempt <= max_attempts; ++attempt) {
        std::uint64_t a = random_prime(bits, rng);
        std::uint64_t b = random_prime(bits, rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        KeyPair kp{a, b, alpha_num, alpha_den};
        if (validate_keypair(kp, block_width).valid) return kp;
    }
    throw generation_error("generate_keypair: no valid pair in " +
                               std::to_string(max_attempts) + " attempts",
                           max_attempts);
}

std::string serialize_key(const KeyFile& key) {
    check_keypair(key.pair);
    if (key.block_width < 1 || key.block_width > 32)
        throw block_width_error("serialize_key: block width must be in [1, 32]");
    std::string out = "MABCVK-KEY 1\n";
    out += "k1=" + std::to_string(key.pair.k1) + "\n";
    out += "k2=" + std::to_string(key.pair.k2) + "\n";
    out += "alpha=" + std::to_string(key.pair.alpha_num) + "/" +
           std::to_string(key.pair.alpha_den) + "\n";
    out += "width=" + std::to_string(key.block_width) + "\n";
    return out;
}

namespace {

std::uint64_t parse_decimal(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    if (text.empty())
        throw key_parse_error("key file malformed: empty " + std::string(what));
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw key_parse_error("key file malformed: bad " + std::string(what) +
                              " value '" + std::string(text) + "'");
    return value;
}

// Consumes one "name=..." line; returns the part after '='.
std::string_view take_field(std::string_view& rest, std::string_view name) {
    const auto eol = rest.find('\n');
    if (eol == std::string_view::npos)
        throw key_parse_error("key file malformed: missing newline after " +
                              std::string(name) + " line");
    std::string_view line = rest.substr(0, eol);
    rest.remove_prefix(eol + 1);
    const std::string prefix = std::string(name) + "=";
    if (line.substr(0, prefix.size()) != prefix)
        throw key_parse_error("key file malformed: expected '" + prefix +
                              "...', found '" + std::string(line) + "'");
    return line.substr(prefix.size());
}

}  // namespace

KeyFile parse_key(std::string_view text) {
    constexpr std::string_view header = "MABCVK-KEY 1\n";
    if (text.substr(0, header.size()) != header)
        throw key_parse_error("key file malformed: bad header line");
    std::string_view rest = text.substr(header.size());

    KeyFile key;
    key.pair.k1 = parse_decimal(take_field(rest, "k1"), "k1");
    key.pair.k2 = parse_decimal(take_field(rest, "k2"), "k2");

    const std::string_view alpha = take_field(rest, "alpha");
    const auto slash = alpha.find('/');
    if (slash == std::string_view::npos)
        throw key_parse_error("key file malformed: alpha must be <num>/<den>");
    key.pair.alpha_num = parse_decimal(alpha.substr(0, slash), "alpha numerator");
    key.pair.alpha_den = parse_decimal(alpha.substr(slash + 1), "alpha denominator");

    const std::uint64_t width = parse_decimal(take_field(rest, "width"), "width");
    if (!rest.empty())
        throw key_parse_error("key file malformed: trailing content after width line");
    if (width < 1 || width > 32)
        throw key_parse_error("key file malformed: width must be in [1, 32]");
    key.block_width = static_cast<unsigned>(width);

    check_keypair(key.pair);
    return key;
}

}  // namespace mabcvk
