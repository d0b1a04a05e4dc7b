#include "ctxsfc/universal_curves.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::raster:
      return "raster";
    case CurveKind::serpentine:
      return "serpentine";
    case CurveKind::hilbert:
      return "hilbert";
  }
  return "unknown";
}

std::optional<CurveKind> parse_curve_kind(std::string_view name) {
  if (name == "raster") return CurveKind::raster;
  if (name == "serpentine" || name == "zigzag" || name == "boustrophedon") return CurveKind::serpentine;
  if (name == "hilbert") return CurveKind::hilbert;
  return std::nullopt;
}

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Index-to-coordinate conversion along a Hilbert curve of side n; x is the
// row and y the column.
Pixel hilbert_d2xy(int n, int d) {
  int x = 0;
  int y = 0;
  int t = d;
  for (int s = 1; s < n; s *= 2) {
    const int rx = 1 & (t / 2);
    const int ry = 1 & (t ^ rx);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
    x += s * rx;
    y += s * ry;
    t /= 4;
  }
  return {x, y};
}

}  // namespace

SfcOrder universal_order(CurveKind kind, const GridSize& size) {
  SfcOrder order{size, {}};
  order.pixels.reserve(size.pixel_count());
  switch (kind) {
    case CurveKind::raster:
      for (PixelId p = 0; p < size.pixel_count(); ++p) order.pixels.push_back(p);
      break;
    case CurveKind::serpentine:
      for (int r = 0; r < size.height(); ++r) {
        for (int i = 0; i < size.width(); ++i) {
          const int c = r % 2 == 0 ? i : size.width() - 1 - i;
          order.pixels.push_back(size.pixel_id(r, c));
        }
      }
      break;
    case CurveKind::hilbert: {
      if (size.height() != size.width() || !is_power_of_two(size.height())) {
        throw UnsupportedSizeError("Hilbert order needs a square power-of-two grid, got " +
                                   std::to_string(size.height()) + "x" + std::to_string(size.width()));
      }
      const int n = size.height();
      for (int d = 0; d < n * n; ++d) {
        const Pixel p = hilbert_d2xy(n, d);
        order.pixels.push_back(size.pixel_id(p.row, p.col));
      }
      break;
    }
  }
  return order;
}

namespace {

// Child corners within a 2x2 block, clockwise so that neighbors on the
// block's 4-cycle differ by one (mod 4).
constexpr std::array<Pixel, 4> kCorner = {Pixel{0, 0}, Pixel{0, 1}, Pixel{1, 1}, Pixel{1, 0}};

int corner_index(int dr, int dc) {
  for (int i = 0; i < 4; ++i) {
    if (kCorner[i].row == dr && kCorner[i].col == dc) return i;
  }
  return -1;
}

// Whether corner i lies on the block side facing direction (dr, dc).
bool on_side(int i, int dr, int dc) {
  if (dr != 0) return kCorner[i].row == (dr > 0 ? 1 : 0);
  return kCorner[i].col == (dc > 0 ? 1 : 0);
}

}  // namespace

SfcOrder scale_order(const SfcOrder& order) {
  validate_order(order, false);
  const GridSize& parent = order.size;
  const std::size_t n = order.pixels.size();
  for (std::size_t t = 1; t < n; ++t) {
    if (!are_four_adjacent(parent, order.pixels[t - 1], order.pixels[t])) {
      throw ContractError("cannot scale: parents " + std::to_string(t - 1) + " and " + std::to_string(t) +
                          " are not 4-adjacent");
    }
  }
  const GridSize child(2 * parent.height(), 2 * parent.width(),
                       std::max(GridSize::kDefaultMaxPixels, 4 * parent.pixel_count()));
  SfcOrder scaled{child, {}};
  scaled.pixels.reserve(4 * n);

  auto emit = [&](Pixel p, int corner) {
    scaled.pixels.push_back(child.pixel_id(2 * p.row + kCorner[corner].row, 2 * p.col + kCorner[corner].col));
  };

  // Entry corner of the first block.
  const Pixel first = parent.pixel(order.pixels[0]);
  int entry = corner_index(2 * first.row < parent.height() - 1 ? 0 : 1, 2 * first.col < parent.width() - 1 ? 0 : 1);

  for (std::size_t t = 0; t < n; ++t) {
    const Pixel p = parent.pixel(order.pixels[t]);
    const int cw = (entry + 1) % 4;
    const int ccw = (entry + 3) % 4;
    int exit;
    if (t + 1 < n) {
      const Pixel next = parent.pixel(order.pixels[t + 1]);
      const int dr = next.row - p.row;
      const int dc = next.col - p.col;
      // The exit is the block neighbor of the entry on the side facing the
      // next parent; the route walks the other way round the block to reach it.
      exit = on_side(cw, dr, dc) ? cw : ccw;
    } else {
      const auto id = [&](int c) { return child.pixel_id(2 * p.row + kCorner[c].row, 2 * p.col + kCorner[c].col); };
      // Last block: step first to the smaller-id neighbor of the entry.
      exit = id(cw) < id(ccw) ? ccw : cw;
    }
    const int step = exit == cw ? 3 : 1;  // walk away from the exit
    for (int k = 0, c = entry; k < 4; ++k, c = (c + step) % 4) emit(p, c);
    if (t + 1 < n) {
      // Entry of the next block is the child adjacent to this exit.
      const Pixel next = parent.pixel(order.pixels[t + 1]);
      entry = corner_index(next.row != p.row ? 1 - kCorner[exit].row : kCorner[exit].row,
                           next.col != p.col ? 1 - kCorner[exit].col : kCorner[exit].col);
    }
  }
  return scaled;
}

}  // namespace ctxsfc
