#include "ctxsfc/idx.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (offset + 4 > bytes.size()) {
    throw DataError("IDX header truncated at byte offset " + std::to_string(bytes.size()));
  }
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void check_magic(std::uint32_t magic, std::uint32_t expected) {
  if (magic != expected) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "bad IDX magic 0x%08x (expected 0x%08x)", magic, expected);
    throw DataError(buf);
  }
}

void check_payload(std::span<const std::uint8_t> bytes, std::size_t header, std::size_t payload) {
  if (bytes.size() < header + payload) {
    throw DataError("IDX payload truncated at byte offset " + std::to_string(bytes.size()) + " (expected " +
                    std::to_string(header + payload) + " bytes)");
  }
}

}  // namespace

ImageBatch parse_idx_images(std::span<const std::uint8_t> bytes) {
  check_magic(read_be32(bytes, 0), kIdxImageMagic);
  const std::size_t count = read_be32(bytes, 4);
  const std::size_t rows = read_be32(bytes, 8);
  const std::size_t cols = read_be32(bytes, 12);
  if (rows == 0 || cols == 0 || rows > 4096 || cols > 4096) {
    throw DataError("implausible IDX image dimensions " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  const std::size_t per_image = rows * cols;
  check_payload(bytes, 16, count * per_image);
  ImageBatch images;
  images.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    images.push_back(Image::from_bytes(static_cast<int>(rows), static_cast<int>(cols),
                                       bytes.subspan(16 + i * per_image, per_image)));
  }
  return images;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
  check_magic(read_be32(bytes, 0), kIdxLabelMagic);
  const std::size_t count = read_be32(bytes, 4);
  check_payload(bytes, 8, count);
  return {bytes.begin() + 8, bytes.begin() + 8 + static_cast<std::ptrdiff_t>(count)};
}

std::vector<std::uint8_t> serialize_idx_images(std::span<const Image> images) {
  std::vector<std::uint8_t> out;
  const int rows = images.empty() ? 0 : images.front().height();
  const int cols = images.empty() ? 0 : images.front().width();
  put_be32(out, kIdxImageMagic);
  put_be32(out, static_cast<std::uint32_t>(images.size()));
  put_be32(out, static_cast<std::uint32_t>(rows));
  put_be32(out, static_cast<std::uint32_t>(cols));
  for (const Image& image : images) {
    if (image.height() != rows || image.width() != cols) throw ContractError("IDX images must share one size");
    const auto b = image.to_bytes();
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::vector<std::uint8_t> serialize_idx_labels(std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  put_be32(out, kIdxLabelMagic);
  put_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(in.tellg()));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!in) throw DataError("failed reading " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("failed writing " + path.string());
}

ImageBatch load_idx_images(const std::filesystem::path& path) {
  try {
    return parse_idx_images(read_file_bytes(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> load_idx_labels(const std::filesystem::path& path) {
  try {
    return parse_idx_labels(read_file_bytes(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_idx_images(const std::filesystem::path& path, std::span<const Image> images) {
  write_file_bytes(path, serialize_idx_images(images));
}

void write_idx_labels(const std::filesystem::path& path, std::span<const std::uint8_t> labels) {
  write_file_bytes(path, serialize_idx_labels(labels));
}

}  // namespace ctxsfc
