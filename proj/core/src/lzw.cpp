#include "ctxsfc/lzw.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc::lzw {

namespace {

// Open-addressing map from (prefix code, next byte) to code.
class Dictionary {
 public:
  Dictionary() { keys_.fill(kEmpty); }

  int find(std::uint32_t prefix, std::uint8_t byte) const {
    const std::uint32_t key = (prefix << 8) | byte;
    for (std::uint32_t slot = hash(key);; slot = (slot + 1) & kMask) {
      if (keys_[slot] == kEmpty) return -1;
      if (keys_[slot] == key) return values_[slot];
    }
  }

  void insert(std::uint32_t prefix, std::uint8_t byte, Code code) {
    const std::uint32_t key = (prefix << 8) | byte;
    std::uint32_t slot = hash(key);
    while (keys_[slot] != kEmpty) slot = (slot + 1) & kMask;
    keys_[slot] = key;
    values_[slot] = code;
  }

 private:
  static constexpr std::uint32_t kSlots = 8192;
  static constexpr std::uint32_t kMask = kSlots - 1;
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  static std::uint32_t hash(std::uint32_t key) { return (key * 2654435761u) >> 19; }

  std::array<std::uint32_t, kSlots> keys_;
  std::array<Code, kSlots> values_{};
};

}  // namespace

int code_width(std::size_t index) {
  const std::size_t next = std::min<std::size_t>(256 + index, kMaxEntries);
  const int width = std::bit_width(next);
  return std::clamp(width, kMinWidth, kMaxWidth);
}

std::vector<Code> encode(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw ContractError("LZW input must be non-empty");
  auto dict = std::make_unique<Dictionary>();
  std::vector<Code> codes;
  std::size_t next_code = 256;
  std::uint32_t current = bytes[0];
  for (std::size_t i = 1; i < bytes.size(); ++i) {
    const std::uint8_t b = bytes[i];
    const int found = dict->find(current, b);
    if (found >= 0) {
      current = static_cast<std::uint32_t>(found);
      continue;
    }
    codes.push_back(static_cast<Code>(current));
    if (next_code < kMaxEntries) dict->insert(current, b, static_cast<Code>(next_code++));
    current = b;
  }
  codes.push_back(static_cast<Code>(current));
  return codes;
}

std::vector<std::uint8_t> decode(std::span<const Code> codes) {
  std::vector<std::uint8_t> out;
  if (codes.empty()) return out;
  // Each entry is (prefix code, last byte, first byte, length).
  struct Entry {
    Code prefix;
    std::uint8_t last;
    std::uint8_t first;
    std::uint32_t length;
  };
  std::vector<Entry> table;
  table.reserve(kMaxEntries);
  for (int b = 0; b < 256; ++b) {
    table.push_back({0, static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(b), 1});
  }
  auto append = [&](Code code) {
    const std::size_t start = out.size();
    out.resize(start + table[code].length);
    for (std::size_t pos = out.size(); pos > start;) {
      out[--pos] = table[code].last;
      code = table[code].prefix;
    }
  };

  if (codes[0] >= 256) throw DataError("LZW stream starts with a non-literal code");
  append(codes[0]);
  Code prev = codes[0];
  for (std::size_t i = 1; i < codes.size(); ++i) {
    const Code code = codes[i];
    const bool room = table.size() < kMaxEntries;
    if (code < table.size()) {
      append(code);
      if (room) table.push_back({prev, table[code].first, table[prev].first, table[prev].length + 1});
    } else if (code == table.size() && room) {
      // The code being defined right now: prev's string plus its own first byte.
      table.push_back({prev, table[prev].first, table[prev].first, table[prev].length + 1});
      append(code);
    } else {
      throw DataError("LZW code " + std::to_string(code) + " at position " + std::to_string(i) + " is undefined");
    }
    prev = code;
  }
  return out;
}

std::size_t packed_bits(std::size_t code_count) {
  std::size_t bits = 0;
  // Widths only change at 256 + i crossing a power of two.
  for (std::size_t i = 0; i < code_count;) {
    const int w = code_width(i);
    std::size_t run_end = code_count;
    if (w < kMaxWidth) {
      const std::size_t boundary = (std::size_t{1} << w) - 256;  // first index needing w + 1 bits
      run_end = std::min(run_end, boundary);
    }
    bits += static_cast<std::size_t>(w) * (run_end - i);
    i = run_end;
  }
  return bits;
}

std::vector<std::uint8_t> pack(std::span<const Code> codes) {
  std::vector<std::uint8_t> out((packed_bits(codes.size()) + 7) / 8, 0);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const int w = code_width(i);
    for (int k = 0; k < w; ++k, ++bit) {
      if ((codes[i] >> k) & 1u) out[bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
    }
  }
  return out;
}

std::vector<Code> unpack(std::span<const std::uint8_t> packed) {
  std::vector<Code> codes;
  const std::size_t total = packed.size() * 8;
  std::size_t bit = 0;
  for (std::size_t i = 0;; ++i) {
    const int w = code_width(i);
    if (bit + static_cast<std::size_t>(w) > total) break;
    Code code = 0;
    for (int k = 0; k < w; ++k, ++bit) {
      if ((packed[bit / 8] >> (bit % 8)) & 1u) code = static_cast<Code>(code | (1u << k));
    }
    codes.push_back(code);
  }
  return codes;
}

std::size_t encoded_length(std::span<const std::uint8_t> bytes) {
  return (packed_bits(encode(bytes).size()) + 7) / 8;
}

std::vector<std::uint8_t> compress(std::span<const std::uint8_t> bytes) { return pack(encode(bytes)); }

std::vector<std::uint8_t> decompress(std::span<const std::uint8_t> packed) { return decode(unpack(packed)); }

}  // namespace ctxsfc::lzw
