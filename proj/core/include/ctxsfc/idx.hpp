#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ctxsfc/image.hpp"

namespace ctxsfc {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

// IDX unsigned-byte tensors with big-endian headers. Images come back scaled
// to [0, 1]. Parse failures throw DataError naming the byte offset.
ImageBatch parse_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_idx_images(std::span<const Image> images);
std::vector<std::uint8_t> serialize_idx_labels(std::span<const std::uint8_t> labels);

ImageBatch load_idx_images(const std::filesystem::path& path);
std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path);
void write_idx_images(const std::filesystem::path& path, std::span<const Image> images);
void write_idx_labels(const std::filesystem::path& path, std::span<const std::uint8_t> labels);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace ctxsfc
