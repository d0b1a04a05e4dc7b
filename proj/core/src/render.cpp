#include "ctxsfc/render.hpp"

#include <cstdio>
#include <sstream>

#include "ctxsfc/error.hpp"
#include "ctxsfc/objectives.hpp"

namespace ctxsfc {

std::string render_overlay(const Image& image, const SfcOrder& order, const OverlayStyle& style) {
  if (image.height() != order.size.height() || image.width() != order.size.width()) {
    throw ContractError("overlay image and order sizes differ");
  }
  const double s = style.cell;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << image.width() * s << "\" height=\""
      << image.height() * s << "\" viewBox=\"0 0 " << image.width() * s << ' ' << image.height() * s << "\">\n";
  if (style.draw_image) {
    out << "<g shape-rendering=\"crispEdges\">\n";
    char color[8];
    for (int r = 0; r < image.height(); ++r) {
      for (int c = 0; c < image.width(); ++c) {
        const unsigned v = quantize_sample(image(r, c));
        std::snprintf(color, sizeof color, "#%02x%02x%02x", v, v, v);
        out << "<rect x=\"" << c * s << "\" y=\"" << r * s << "\" width=\"" << s << "\" height=\"" << s
            << "\" fill=\"" << color << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"" << style.stroke << "\" stroke-width=\"" << style.stroke_width
      << "\" stroke-linejoin=\"round\" points=\"";
  for (std::size_t i = 0; i < order.pixels.size(); ++i) {
    const Pixel p = order.size.pixel(order.pixels[i]);
    out << (i ? " " : "") << (p.col + 0.5) * s << ',' << (p.row + 0.5) * s;
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

Image render_strip(const Image& image, const SfcOrder& order) {
  auto values = flatten(image, order);
  const int n = static_cast<int>(values.size());
  return Image(1, n, std::move(values));
}

}  // namespace ctxsfc
