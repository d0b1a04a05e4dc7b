#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ctxsfc::lzw {

// Codec contract:
//  * the dictionary starts with the 256 single-byte strings;
//  * greedy longest match; every emitted code adds one entry until the
//    dictionary holds 4096 entries, after which it is frozen (no clear codes);
//  * code i of the stream is written LSB-first with the smallest width in
//    [9, 12] that can hold the next dictionary index at that point
//    (min(256 + i, 4096), capped at 12 bits);
//  * the encoded length is ceil(total bits / 8).

inline constexpr std::size_t kMaxEntries = 4096;
inline constexpr int kMinWidth = 9;
inline constexpr int kMaxWidth = 12;

using Code = std::uint16_t;

// Width in bits of the code at position `index` in the stream.
int code_width(std::size_t index);

// Throws ContractError on empty input.
std::vector<Code> encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> decode(std::span<const Code> codes);

std::vector<std::uint8_t> pack(std::span<const Code> codes);
// Reads codes until fewer than the next code width bits remain; trailing
// padding is always shorter than a code.
std::vector<Code> unpack(std::span<const std::uint8_t> packed);

std::size_t packed_bits(std::size_t code_count);
// Encoded byte count, ceil(total bits / 8). Throws ContractError on empty input.
std::size_t encoded_length(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> packed);

}  // namespace ctxsfc::lzw
