#include "ctxsfc/pgm.hpp"

#include <cctype>
#include <string>

#include "ctxsfc/error.hpp"
#include "ctxsfc/idx.hpp"

namespace ctxsfc {

namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  long number() {
    skip_space();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw DataError("malformed PGM header at byte offset " + std::to_string(pos_));
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1'000'000) throw DataError("PGM header value too large at byte offset " + std::to_string(pos_));
    }
    return v;
  }
  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw DataError("malformed PGM header at byte offset " + std::to_string(pos_));
    }
    return pos_ + 1;
  }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

Image parse_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw DataError("not a binary PGM (missing P5)");
  HeaderScanner scan(bytes);
  const long width = scan.number();
  const long height = scan.number();
  const long maxval = scan.number();
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) throw DataError("invalid PGM header values");
  const std::size_t start = scan.raster_start();
  const std::size_t sample = maxval > 255 ? 2 : 1;
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < start + n * sample) {
    throw DataError("PGM raster truncated at byte offset " + std::to_string(bytes.size()) + " (expected " +
                    std::to_string(start + n * sample) + " bytes)");
  }
  Image image(static_cast<int>(height), static_cast<int>(width));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t at = start + i * sample;
    const unsigned v = sample == 2 ? (unsigned{bytes[at]} << 8) | bytes[at + 1] : bytes[at];
    image[i] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return image;
}

std::vector<std::uint8_t> serialize_pgm(const Image& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto samples = image.to_bytes();
  out.insert(out.end(), samples.begin(), samples.end());
  return out;
}

Image load_pgm(const std::filesystem::path& path) {
  try {
    return parse_pgm(read_file_bytes(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_pgm(const std::filesystem::path& path, const Image& image) { write_file_bytes(path, serialize_pgm(image)); }

}  // namespace ctxsfc
