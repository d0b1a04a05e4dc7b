#pragma once

#include <string>

#include "ctxsfc/image.hpp"
#include "ctxsfc/order.hpp"

namespace ctxsfc {

struct OverlayStyle {
  double cell = 8.0;  // SVG units per pixel
  std::string stroke = "#d62728";
  double stroke_width = 1.5;
  bool draw_image = true;
};

// SVG document: one grey rect per pixel (when draw_image is set) and a single
// polyline through the pixel centers in scan order, H*W points.
std::string render_overlay(const Image& image, const SfcOrder& order, const OverlayStyle& style = {});

// The flattened sequence as a 1 x (H*W) image.
Image render_strip(const Image& image, const SfcOrder& order);

}  // namespace ctxsfc
