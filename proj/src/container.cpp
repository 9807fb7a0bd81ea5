#include "mabcvk/container.hpp"

#include <bit>
#include <string>
#include <unordered_map>

#include "mabcvk/modmath.hpp"

namespace mabcvk {

namespace {

void put_u64le(std::uint8_t* out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint64_t get_u64le(const std::uint8_t* in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{in[i]} << (8 * i);
    return v;
}

// MSB-first bit packing; pad bits are zero and confined to the last byte.
class BitWriter {
public:
    explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    void write(std::uint64_t value, unsigned width) {
        acc_ = (acc_ << width) | (value & ((std::uint64_t{1} << width) - 1));
        nbits_ += width;
        while (nbits_ >= 8) {
            nbits_ -= 8;
            out_.push_back(static_cast<std::uint8_t>(acc_ >> nbits_));
        }
        acc_ &= (std::uint64_t{1} << nbits_) - 1;
    }

    void flush() {
        if (nbits_ == 0) return;
        out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - nbits_)));
        acc_ = 0;
        nbits_ = 0;
    }

private:
    std::vector<std::uint8_t>& out_;
    std::uint64_t acc_ = 0;
    unsigned nbits_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint64_t read(unsigned width) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) {
            if (byte_ >= in_.size())
                throw format_error("bit stream shorter than the declared blocks");
            v = (v << 1) | ((in_[byte_] >> (7 - bit_)) & 1u);
            if (++bit_ == 8) {
                bit_ = 0;
                ++byte_;
            }
        }
        return v;
    }

private:
    std::span<const std::uint8_t> in_;
    std::size_t byte_ = 0;
    unsigned bit_ = 0;
};

// Memoizes candidate sets per block value; a file has at most 2^w distinct
// values, so encryption factors each k2 - p once.
class CandidateCache {
public:
    explicit CandidateCache(const CipherContext& ctx) : ctx_(ctx) {
        if (ctx.block_width <= 16)
            table_.resize(std::size_t{1} << ctx.block_width);
    }

    std::span<const std::uint64_t> get(std::uint32_t p) {
        std::vector<std::uint64_t>* slot;
        if (!table_.empty()) {
            slot = &table_[p];
        } else {
            slot = &map_[p];
        }
        // An empty slot is always "not yet computed": candidates() throws
        // rather than return an empty set, so nothing empty is ever stored.
        if (slot->empty()) *slot = candidates(p, ctx_).values;
        return *slot;
    }

private:
    const CipherContext& ctx_;
    std::vector<std::vector<std::uint64_t>> table_;
    std::unordered_map<std::uint32_t, std::vector<std::uint64_t>> map_;
};

__uint128_t expected_payload_bytes(PayloadFormat format, std::uint64_t n,
                                   const CipherContext& ctx) {
    if (format == PayloadFormat::wide32) return __uint128_t{4} * n;
    return (__uint128_t{packed_bits_per_block(ctx.k1)} * n + 7) / 8;
}

}  // namespace

std::array<std::uint8_t, container_header_size> write_header(const ContainerHeader& h) {
    std::array<std::uint8_t, container_header_size> out{};
    for (std::size_t i = 0; i < container_magic.size(); ++i)
        out[i] = container_magic[i];
    out[5] = static_cast<std::uint8_t>(h.format);
    out[6] = h.block_width;
    put_u64le(out.data() + 7, h.block_count);
    put_u64le(out.data() + 15, h.original_length_bits);
    return out;
}

ContainerHeader parse_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < container_header_size)
        throw format_error("container shorter than the 23-byte header");
    for (std::size_t i = 0; i < container_magic.size(); ++i)
        if (bytes[i] != container_magic[i])
            throw bad_magic_error("bad container magic (or unsupported version)");
    ContainerHeader h;
    if (bytes[5] > 1)
        throw format_error("unknown payload format byte " + std::to_string(bytes[5]));
    h.format = static_cast<PayloadFormat>(bytes[5]);
    h.block_width = bytes[6];
    if (h.block_width < 1 || h.block_width > 32)
        throw format_error("container block width must be in [1, 32]");
    h.block_count = get_u64le(bytes.data() + 7);
    h.original_length_bits = get_u64le(bytes.data() + 15);
    const __uint128_t capacity = __uint128_t{h.block_count} * h.block_width;
    if (capacity < h.original_length_bits ||
        capacity - h.original_length_bits >= h.block_width)
        throw format_error("block count does not match the original bit length");
    return h;
}

std::vector<std::uint8_t> encode_wide32(std::span<const std::uint64_t> blocks) {
    std::vector<std::uint8_t> out;
    out.reserve(blocks.size() * 4);
    for (std::uint64_t b : blocks) {
        if (b == 0)
            throw format_error("cipher block 0 violates the block >= 1 invariant");
        if (b > 0xFFFFFFFFull)
            throw format_error("cipher block " + std::to_string(b) +
                               " does not fit the wide-32 payload format");
        for (int i = 0; i < 4; ++i)
            out.push_back(static_cast<std::uint8_t>(b >> (8 * i)));
    }
    return out;
}

std::vector<std::uint64_t> decode_wide32(std::span<const std::uint8_t> bytes) {
    if (bytes.size() % 4 != 0)
        throw format_error("wide-32 payload length is not a multiple of 4");
    std::vector<std::uint64_t> out(bytes.size() / 4);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint32_t v = 0;
        for (int j = 0; j < 4; ++j)
            v |= std::uint32_t{bytes[4 * i + j]} << (8 * j);
        out[i] = v;
    }
    return out;
}

unsigned packed_bits_per_block(std::uint64_t k1) {
    if (k1 < 2) throw domain_error("packed_bits_per_block: k1 must be >= 2");
    return static_cast<unsigned>(std::bit_width(k1 - 1));
}

std::vector<std::uint8_t> encode_packed(std::span<const std::uint64_t> blocks,
                                        const CipherContext& ctx) {
    const unsigned width = packed_bits_per_block(ctx.k1);
    std::vector<std::uint8_t> out;
    out.reserve((blocks.size() * width + 7) / 8);
    BitWriter writer(out);
    for (std::uint64_t b : blocks) {
        if (b == 0)
            throw format_error("cipher block 0 violates the block >= 1 invariant");
        if (b >= ctx.k1)
            throw format_error("cipher block " + std::to_string(b) +
                               " is not below k1");
        writer.write(b, width);
    }
    writer.flush();
    return out;
}

std::vector<std::uint64_t> decode_packed(std::span<const std::uint8_t> bytes,
                                         std::uint64_t block_count,
                                         const CipherContext& ctx) {
    const unsigned width = packed_bits_per_block(ctx.k1);
    BitReader reader(bytes);
    std::vector<std::uint64_t> out(block_count);
    for (std::uint64_t i = 0; i < block_count; ++i) out[i] = reader.read(width);
    return out;
}

std::vector<std::uint32_t> split_blocks(std::span<const std::uint8_t> data,
                                        unsigned width) {
    if (width < 1 || width > 32)
        throw domain_error("split_blocks: width must be in [1, 32]");
    if (width == 8)
        return std::vector<std::uint32_t>(data.begin(), data.end());
    const std::uint64_t total_bits = std::uint64_t{8} * data.size();
    const std::uint64_t count = (total_bits + width - 1) / width;
    std::vector<std::uint32_t> out;
    out.reserve(count);
    std::uint64_t acc = 0;
    unsigned nbits = 0;
    for (std::uint8_t byte : data) {
        acc = (acc << 8) | byte;
        nbits += 8;
        while (nbits >= width) {
            nbits -= width;
            out.push_back(static_cast<std::uint32_t>(acc >> nbits));
            acc &= (std::uint64_t{1} << nbits) - 1;
        }
    }
    if (nbits > 0)  // zero-padded tail block
        out.push_back(static_cast<std::uint32_t>(acc << (width - nbits)));
    return out;
}

std::vector<std::uint8_t> join_blocks(const std::vector<std::uint32_t>& blocks,
                                      unsigned width, std::uint64_t total_bits) {
    if (width < 1 || width > 32)
        throw domain_error("join_blocks: width must be in [1, 32]");
    if (total_bits % 8 != 0)
        throw format_error("original length is not a whole number of bytes");
    const __uint128_t capacity = __uint128_t{blocks.size()} * width;
    if (capacity < total_bits)
        throw format_error("blocks hold fewer bits than the original length");
    std::vector<std::uint8_t> out;
    out.reserve(total_bits / 8);
    if (width == 8) {
        for (std::uint64_t i = 0; i < total_bits / 8; ++i)
            out.push_back(static_cast<std::uint8_t>(blocks[i]));
        return out;
    }
    std::uint64_t acc = 0;
    unsigned nbits = 0;
    std::uint64_t emitted = 0;
    for (std::uint32_t b : blocks) {
        acc = (acc << width) | (b & ((std::uint64_t{1} << width) - 1));
        nbits += width;
        while (nbits >= 8 && emitted < total_bits / 8) {
            nbits -= 8;
            out.push_back(static_cast<std::uint8_t>(acc >> nbits));
            acc &= (std::uint64_t{1} << nbits) - 1;
            ++emitted;
        }
        if (emitted == total_bits / 8) break;
    }
    return out;
}

std::vector<std::uint8_t> encrypt_file(std::span<const std::uint8_t> plain,
                                       const CipherContext& ctx,
                                       PayloadFormat format,
                                       const CandidatePicker& pick) {
    const std::vector<std::uint32_t> values = split_blocks(plain, ctx.block_width);
    CandidateCache cache(ctx);
    std::vector<std::uint64_t> cipher(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::span<const std::uint64_t> options = cache.get(values[i]);
        const std::uint64_t a = pick(i, values[i], options);
        cipher[i] = encrypt_block(values[i], ctx, a);
    }
    const std::size_t k =
        rotation_offset(ctx.alpha_num, ctx.alpha_den, cipher.size());
    const std::vector<std::uint64_t> rotated =
        rotate_sequence(cipher, k, Rotate::left);

    ContainerHeader h;
    h.format = format;
    h.block_width = static_cast<std::uint8_t>(ctx.block_width);
    h.block_count = rotated.size();
    h.original_length_bits = std::uint64_t{8} * plain.size();

    const auto header = write_header(h);
    std::vector<std::uint8_t> out(header.begin(), header.end());
    const std::vector<std::uint8_t> payload = format == PayloadFormat::wide32
                                                  ? encode_wide32(rotated)
                                                  : encode_packed(rotated, ctx);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::vector<std::uint8_t> encrypt_file(std::span<const std::uint8_t> plain,
                                       const CipherContext& ctx,
                                       PayloadFormat format, std::uint64_t seed) {
    return encrypt_file(plain, ctx, format,
                        [seed](std::size_t index, std::uint32_t,
                               std::span<const std::uint64_t> options) {
                            SplitMix64 rng = SplitMix64::for_block(seed, index);
                            return options[rng.below(options.size())];
                        });
}

std::vector<std::uint8_t> decrypt_file(std::span<const std::uint8_t> container,
                                       const CipherContext& ctx) {
    const ContainerHeader h = parse_header(container);
    if (h.block_width != ctx.block_width)
        throw format_error("container block width " +
                           std::to_string(h.block_width) +
                           " does not match the context width " +
                           std::to_string(ctx.block_width));
    const auto payload = container.subspan(container_header_size);
    const __uint128_t expected = expected_payload_bytes(h.format, h.block_count, ctx);
    if (payload.size() < expected) throw format_error("truncated payload");
    if (payload.size() > expected)
        throw format_error("trailing bytes after the payload");

    const std::vector<std::uint64_t> rotated =
        h.format == PayloadFormat::wide32
            ? decode_wide32(payload)
            : decode_packed(payload, h.block_count, ctx);
    const std::size_t k =
        rotation_offset(ctx.alpha_num, ctx.alpha_den, rotated.size());
    const std::vector<std::uint64_t> cipher =
        rotate_sequence(rotated, k, Rotate::right);

    std::vector<std::uint32_t> values(cipher.size());
    for (std::size_t i = 0; i < cipher.size(); ++i)
        values[i] = decrypt_block(cipher[i], ctx);
    return join_blocks(values, ctx.block_width, h.original_length_bits);
}

}  // namespace mabcvk
