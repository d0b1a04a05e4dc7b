#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ctxsfc/image.hpp"

namespace ctxsfc {

// Binary portable graymap (P5). Comments in the header are skipped; maxval up
// to 65535 is accepted and rescaled to [0, 1]. Writing always uses maxval 255.
Image parse_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_pgm(const Image& image);

Image load_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Image& image);

}  // namespace ctxsfc
