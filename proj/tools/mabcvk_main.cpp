// Command-line front end: keygen / validate / encrypt / decrypt / bench /
// analyze / crack. Exit codes: 0 success, 1 usage, 2 key or validation
// failure, 3 bad data or anything else.
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mabcvk/analysis.hpp"
#include "mabcvk/cipher.hpp"
#include "mabcvk/container.hpp"
#include "mabcvk/errors.hpp"
#include "mabcvk/keys.hpp"
#include "mabcvk/modmath.hpp"
#include "mabcvk/rng.hpp"

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw mabcvk::data_error("cannot open " + path + " for reading");
    std::vector<std::uint8_t> data{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
    if (in.bad()) throw mabcvk::data_error("read failed on " + path);
    return data;
}

// Writes through a temp file so a failure never leaves a partial output.
void write_file_atomic(const std::string& path,
                       std::span<const std::uint8_t> data) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw mabcvk::data_error("cannot open " + tmp + " for writing");
        if (!data.empty())
            out.write(reinterpret_cast<const char*>(data.data()),
                      static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw mabcvk::data_error("write failed on " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw mabcvk::data_error("cannot move " + tmp + " into place: " +
                                 ec.message());
    }
}

mabcvk::KeyFile load_key(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_file(path);
    return mabcvk::parse_key(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::pair<std::uint64_t, std::uint64_t> parse_alpha(const std::string& text) {
    const std::size_t slash = text.find('/');
    std::uint64_t num = 0, den = 0;
    if (slash != std::string::npos) {
        const char* b = text.data();
        const auto r1 = std::from_chars(b, b + slash, num);
        const auto r2 =
            std::from_chars(b + slash + 1, b + text.size(), den);
        if (r1.ec == std::errc{} && r1.ptr == b + slash &&
            r2.ec == std::errc{} && r2.ptr == b + text.size() && den != 0)
            return {num, den};
    }
    throw CLI::ValidationError("--alpha expects a fraction like 1/10");
}

std::string g4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

mabcvk::PayloadFormat format_from_name(const std::string& name) {
    return name == "packed" ? mabcvk::PayloadFormat::packed
                            : mabcvk::PayloadFormat::wide32;
}

struct Options {
    std::string key_path, in_path, out_path, known_path, cipher_path;
    std::string alpha = "1/10";
    std::string format = "wide32";
    unsigned bits = 16;
    unsigned width = 8;
    unsigned max_bits = 8;
    unsigned trials = 100;
    double rate = 1.0;
    double checks_per_second = 1e12;
    std::uint64_t seed = mabcvk::entropy_seed();
    std::vector<std::size_t> sizes;
};

void run_keygen(const Options& o) {
    const auto [num, den] = parse_alpha(o.alpha);
    mabcvk::SplitMix64 rng(o.seed);
    const mabcvk::KeyPair pair =
        mabcvk::generate_keypair(o.bits, num, den, o.width, rng);
    const std::string text = mabcvk::serialize_key({pair, o.width});
    write_file_atomic(o.out_path,
                      std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                text.size()));
    std::cout << "k1=" << pair.k1 << " k2=" << pair.k2 << " alpha=" << num << "/"
              << den << " width=" << o.width << "\n"
              << "wrote " << o.out_path << "\n";
}

void run_validate(const Options& o, bool width_given) {
    const mabcvk::KeyFile key = load_key(o.key_path);
    const unsigned width = width_given ? o.width : key.block_width;
    const mabcvk::ValidationReport report =
        mabcvk::validate_keypair(key.pair, width);
    if (!report.valid) {
        const std::uint32_t block = *report.first_failing_block;
        throw mabcvk::empty_candidate_error(
            "key pair (" + std::to_string(key.pair.k1) + ", " +
                std::to_string(key.pair.k2) + ") is invalid at width " +
                std::to_string(width) + ": block " + std::to_string(block) +
                " has no substitution candidates",
            block);
    }
    std::cout << "key pair (" << key.pair.k1 << ", " << key.pair.k2
              << ") is valid at width " << width << "\n"
              << "minimum candidates per block value: "
              << report.candidate_count_min << "\n";
    for (const auto& [count, values] : report.candidate_count_histogram)
        std::cout << "block values with " << count << " candidate(s): " << values
                  << "\n";
}

void run_encrypt(const Options& o) {
    const mabcvk::KeyFile key = load_key(o.key_path);
    const mabcvk::CipherContext ctx =
        mabcvk::make_context(key.pair, key.block_width);
    const std::vector<std::uint8_t> plain = read_file(o.in_path);
    const std::vector<std::uint8_t> container =
        mabcvk::encrypt_file(plain, ctx, format_from_name(o.format), o.seed);
    write_file_atomic(o.out_path, container);
    std::cout << "encrypted " << plain.size() << " bytes into "
              << container.size() << " bytes (" << o.format << ")\n";
}

void run_decrypt(const Options& o) {
    const mabcvk::KeyFile key = load_key(o.key_path);
    const std::vector<std::uint8_t> container = read_file(o.in_path);
    // The container header fixes the width the data was split at.
    const mabcvk::ContainerHeader header = mabcvk::parse_header(container);
    const mabcvk::CipherContext ctx =
        mabcvk::make_context(key.pair, header.block_width);
    const std::vector<std::uint8_t> plain = mabcvk::decrypt_file(container, ctx);
    write_file_atomic(o.out_path, plain);
    std::cout << "decrypted " << container.size() << " bytes into "
              << plain.size() << " bytes\n";
}

void run_bench(const Options& o) {
    const mabcvk::KeyFile key = load_key(o.key_path);
    const mabcvk::CipherContext ctx =
        mabcvk::make_context(key.pair, key.block_width);
    const mabcvk::BenchReport report =
        mabcvk::bench(o.sizes, ctx, mabcvk::entropy_seed());
    std::cout << " size_kb    encrypt_s    decrypt_s\n";
    for (const mabcvk::BenchRow& r : report.rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%8zu %12.6f %12.6f", r.size_kb,
                      r.encrypt_seconds, r.decrypt_seconds);
        std::cout << line << "\n";
    }
    if (report.encrypt_fit)
        std::cout << "encrypt fit: " << g4(report.encrypt_fit->slope)
                  << " s/KB + " << g4(report.encrypt_fit->intercept)
                  << " s, R^2 = " << g4(report.encrypt_fit->r2) << "\n";
    if (report.decrypt_fit)
        std::cout << "decrypt fit: " << g4(report.decrypt_fit->slope)
                  << " s/KB + " << g4(report.decrypt_fit->intercept)
                  << " s, R^2 = " << g4(report.decrypt_fit->r2) << "\n";
}

void run_keyspace(const Options& o) {
    const mabcvk::KeyspaceRow row = mabcvk::crack_time(o.bits, o.rate);
    std::cout << "key bits: " << row.key_bits << "\n"
              << "alternative keys: " << g4(row.alternative_keys) << "\n"
              << "rate: " << g4(row.rate_per_us) << " keys per microsecond\n"
              << "average crack time: ≈"
              << mabcvk::render_duration(row.avg_crack_seconds) << "\n";
}

void run_primes(const Options& o) {
    const mabcvk::PrimeKeyspaceReport report =
        mabcvk::prime_keyspace_report(o.bits, o.checks_per_second);
    std::cout << "estimated primes below 2^" << report.key_bits << ": "
              << g4(report.prime_count) << "\n"
              << "at " << g4(report.checks_per_second)
              << " checks per second: ≈" << g4(report.years_to_exhaust)
              << " years to exhaust\n";
}

void run_randomize(const Options& o) {
    const mabcvk::KeyFile key = load_key(o.key_path);
    const mabcvk::CipherContext ctx =
        mabcvk::make_context(key.pair, key.block_width);
    const std::vector<std::uint8_t> sample = read_file(o.in_path);
    const mabcvk::RandomizationReport report =
        mabcvk::randomization_report(ctx, sample, o.trials, o.seed);
    for (const mabcvk::RandomizationEntry& e : report.entries) {
        char line[160];
        std::snprintf(line, sizeof line,
                      "value %3u: occurrences %llu, candidates %llu, distinct "
                      "cipher blocks %llu, coverage %.3f",
                      e.value, static_cast<unsigned long long>(e.occurrences),
                      static_cast<unsigned long long>(e.candidate_count),
                      static_cast<unsigned long long>(e.distinct_observed),
                      e.coverage);
        std::cout << line << "\n";
    }
    for (const auto& [count, values] : report.count_histogram)
        std::cout << "values with " << count << " candidate(s): " << values
                  << "\n";
    char tail[64];
    std::snprintf(tail, sizeof tail, "minimum coverage: %.3f",
                  report.min_coverage);
    std::cout << tail << "\n";
}

void run_crack(const Options& o) {
    const std::vector<std::uint8_t> known = read_file(o.known_path);
    const std::vector<std::uint8_t> container = read_file(o.cipher_path);
    const std::uint64_t prime_count =
        mabcvk::primes_below(std::uint64_t{1} << o.max_bits).size();
    const std::uint64_t pair_count = prime_count * (prime_count - 1) / 2;
    std::cout << "search space: " << prime_count << " primes below 2^"
              << o.max_bits << ", " << pair_count << " prime pairs, 9 alpha "
              << "values -> " << pair_count * 9 << " keys" << std::endl;
    const mabcvk::BruteForceResult result =
        mabcvk::brute_force_recover(known, container, o.max_bits);
    if (!result.key)
        throw mabcvk::key_error("no prime pair below 2^" +
                                std::to_string(o.max_bits) +
                                " decrypts the container to the known plaintext");
    std::cout << "recovered key: k1=" << result.key->k1
              << " k2=" << result.key->k2 << " alpha=" << result.key->alpha_num
              << "/" << result.key->alpha_den << " after " << result.keys_tried
              << " decrypt attempts\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MABCVK block cipher: randomized divisor-substitution "
                 "encryption over modular arithmetic"};
    app.require_subcommand(1);
    Options o;

    CLI::App* keygen = app.add_subcommand("keygen", "Generate a validated key pair");
    keygen->add_option("--bits", o.bits, "Prime size in bits")->required();
    keygen->add_option("--alpha", o.alpha, "Rotation fraction N/D in [1/10, 9/10]");
    keygen->add_option("--width", o.width, "Plaintext block width in bits");
    keygen->add_option("--out", o.out_path, "Key file to write")->required();
    keygen->add_option("--seed", o.seed, "Deterministic RNG seed");
    keygen->callback([&] { run_keygen(o); });

    CLI::App* validate = app.add_subcommand(
        "validate", "Check that every block value is encryptable");
    validate->add_option("--key", o.key_path, "Key file")->required();
    CLI::Option* validate_width =
        validate->add_option("--width", o.width, "Override the key file width");
    validate->callback([&] { run_validate(o, validate_width->count() > 0); });

    CLI::App* encrypt = app.add_subcommand("encrypt", "Encrypt a file");
    encrypt->add_option("--key", o.key_path, "Key file")->required();
    encrypt->add_option("--in", o.in_path, "Plaintext input")->required();
    encrypt->add_option("--out", o.out_path, "Container output")->required();
    encrypt->add_option("--format", o.format, "Payload format")
        ->check(CLI::IsMember({"wide32", "packed"}));
    encrypt->add_option("--seed", o.seed, "Deterministic RNG seed");
    encrypt->callback([&] { run_encrypt(o); });

    CLI::App* decrypt = app.add_subcommand("decrypt", "Decrypt a container");
    decrypt->add_option("--key", o.key_path, "Key file")->required();
    decrypt->add_option("--in", o.in_path, "Container input")->required();
    decrypt->add_option("--out", o.out_path, "Plaintext output")->required();
    decrypt->callback([&] { run_decrypt(o); });

    CLI::App* bench = app.add_subcommand("bench", "Time the full pipeline");
    bench->add_option("--key", o.key_path, "Key file")->required();
    bench->add_option("--sizes", o.sizes, "Comma-separated sizes in KB")
        ->required()
        ->delimiter(',');
    bench->callback([&] { run_bench(o); });

    CLI::App* analyze =
        app.add_subcommand("analyze", "Keyspace and randomization reports");
    analyze->require_subcommand(1);

    CLI::App* keyspace = analyze->add_subcommand(
        "keyspace", "Average brute-force time for a key size");
    keyspace->add_option("--bits", o.bits, "Key size in bits")->required();
    keyspace->add_option("--rate", o.rate, "Keys tried per microsecond");
    keyspace->callback([&] { run_keyspace(o); });

    CLI::App* primes = analyze->add_subcommand(
        "primes", "Prime-count estimate and exhaustion time");
    primes->add_option("--bits", o.bits, "Key size in bits")->required();
    primes->add_option("--checks-per-second", o.checks_per_second,
                       "Primality checks per second");
    primes->callback([&] { run_primes(o); });

    CLI::App* randomize = analyze->add_subcommand(
        "randomize", "Distinct-ciphertext coverage per plaintext value");
    randomize->add_option("--key", o.key_path, "Key file")->required();
    randomize->add_option("--in", o.in_path, "Sample file")->required();
    randomize->add_option("--trials", o.trials, "Encryptions of the sample");
    randomize->add_option("--seed", o.seed, "Deterministic RNG seed");
    randomize->callback([&] { run_randomize(o); });

    CLI::App* crack = app.add_subcommand(
        "crack", "Known-plaintext exhaustive key search");
    crack->add_option("--known", o.known_path, "Known plaintext file")->required();
    crack->add_option("--cipher", o.cipher_path, "Container file")->required();
    crack->add_option("--max-bits", o.max_bits, "Largest key size to try")
        ->check(CLI::Range(4u, 20u));
    crack->callback([&] { run_crack(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mabcvk::key_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const mabcvk::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
