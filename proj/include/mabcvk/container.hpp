#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mabcvk/cipher.hpp"
#include "mabcvk/keys.hpp"

namespace mabcvk {

// 23-byte header, fixed layout, little-endian integers:
//   offset 0  magic "MABC1" (5 bytes; the trailing digit is the format version)
//   offset 5  format byte: 0 = wide-32, 1 = packed
//   offset 6  block width w (1..32)
//   offset 7  payload block count N (u64 LE)
//   offset 15 original length in bits (u64 LE)
inline constexpr std::array<std::uint8_t, 5> container_magic{'M', 'A', 'B', 'C', '1'};
inline constexpr std::size_t container_header_size = 23;

enum class PayloadFormat : std::uint8_t { wide32 = 0, packed = 1 };

struct ContainerHeader {
    PayloadFormat format = PayloadFormat::wide32;
    std::uint8_t block_width = 8;
    std::uint64_t block_count = 0;
    std::uint64_t original_length_bits = 0;
};

std::array<std::uint8_t, container_header_size> write_header(const ContainerHeader& h);

// Validates magic, format byte, width range, and N = ceil(bits / w).
ContainerHeader parse_header(std::span<const std::uint8_t> bytes);

// wide-32: each cipher block as a u32, little-endian. Blocks must fit 32 bits.
std::vector<std::uint8_t> encode_wide32(std::span<const std::uint64_t> blocks);
std::vector<std::uint64_t> decode_wide32(std::span<const std::uint8_t> bytes);

// packed: ceil(log2 k1) bits per block, MSB-first, zero padding in the last
// byte only.
unsigned packed_bits_per_block(std::uint64_t k1);
std::vector<std::uint8_t> encode_packed(std::span<const std::uint64_t> blocks,
                                        const CipherContext& ctx);
std::vector<std::uint64_t> decode_packed(std::span<const std::uint8_t> bytes,
                                         std::uint64_t block_count,
                                         const CipherContext& ctx);

// Splits a byte stream into w-bit blocks, MSB-first, zero-padding the tail
// block. For w = 8 this is one block per byte.
std::vector<std::uint32_t> split_blocks(std::span<const std::uint8_t> data,
                                        unsigned width);

// Inverse of split_blocks: reassembles the bit stream and truncates it to
// total_bits (which must be a whole number of bytes).
std::vector<std::uint8_t> join_blocks(const std::vector<std::uint32_t>& blocks,
                                      unsigned width, std::uint64_t total_bits);

// Chooses the substitution for one block; options is never empty and the
// return value must be one of its members.
using CandidatePicker = std::function<std::uint64_t(
    std::size_t index, std::uint32_t p, std::span<const std::uint64_t> options)>;

// Full pipeline: split, substitute-and-encrypt per block, rotate left by
// rotation_offset(alpha, N), encode, prepend header. The seed overload derives
// each block's randomness from (seed, block index), so the same seed and input
// give byte-identical output no matter how the work is scheduled.
std::vector<std::uint8_t> encrypt_file(std::span<const std::uint8_t> plain,
                                       const CipherContext& ctx,
                                       PayloadFormat format, std::uint64_t seed);
std::vector<std::uint8_t> encrypt_file(std::span<const std::uint8_t> plain,
                                       const CipherContext& ctx,
                                       PayloadFormat format,
                                       const CandidatePicker& pick);

// Inverse pipeline. The context's block width must match the header's.
std::vector<std::uint8_t> decrypt_file(std::span<const std::uint8_t> container,
                                       const CipherContext& ctx);

}  // namespace mabcvk
