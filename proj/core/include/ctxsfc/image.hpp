#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ctxsfc {

// Grayscale image, row-major, values expected in [0, 1].
class Image {
 public:
  Image() = default;
  Image(int height, int width, double fill = 0.0);
  Image(int height, int width, std::vector<double> pixels);

  // Scales 8-bit samples by 1/255.
  static Image from_bytes(int height, int width, std::span<const std::uint8_t> bytes);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return pixels_.size(); }

  double operator()(int row, int col) const { return pixels_[static_cast<std::size_t>(row * width_ + col)]; }
  double& operator()(int row, int col) { return pixels_[static_cast<std::size_t>(row * width_ + col)]; }
  double operator[](std::size_t index) const { return pixels_[index]; }
  double& operator[](std::size_t index) { return pixels_[index]; }

  std::span<const double> pixels() const { return pixels_; }
  std::span<double> pixels() { return pixels_; }

  // Rounds to the nearest 8-bit level, clamping to [0, 255].
  std::vector<std::uint8_t> to_bytes() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> pixels_;
};

using ImageBatch = std::vector<Image>;

std::uint8_t quantize_sample(double value);

}  // namespace ctxsfc
