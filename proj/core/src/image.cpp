#include "ctxsfc/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

Image::Image(int height, int width, double fill)
    : height_(height), width_(width), pixels_(static_cast<std::size_t>(height) * width, fill) {
  if (height < 0 || width < 0) throw ContractError("negative image dimensions");
}

Image::Image(int height, int width, std::vector<double> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (height < 0 || width < 0 || pixels_.size() != static_cast<std::size_t>(height) * width) {
    throw ContractError("image buffer of " + std::to_string(pixels_.size()) + " samples does not match " +
                        std::to_string(height) + "x" + std::to_string(width));
  }
}

Image Image::from_bytes(int height, int width, std::span<const std::uint8_t> bytes) {
  std::vector<double> px(bytes.size());
  std::transform(bytes.begin(), bytes.end(), px.begin(), [](std::uint8_t b) { return b / 255.0; });
  return Image(height, width, std::move(px));
}

std::uint8_t quantize_sample(double value) {
  const double scaled = std::round(std::clamp(value, 0.0, 1.0) * 255.0);
  return static_cast<std::uint8_t>(scaled);
}

std::vector<std::uint8_t> Image::to_bytes() const {
  std::vector<std::uint8_t> out(pixels_.size());
  std::transform(pixels_.begin(), pixels_.end(), out.begin(), quantize_sample);
  return out;
}

}  // namespace ctxsfc
