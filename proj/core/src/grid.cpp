#include "ctxsfc/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

GridSize::GridSize(int height, int width, std::size_t max_pixels) : height_(height), width_(width) {
  if (height < 2 || width < 2 || height % 2 != 0 || width % 2 != 0) {
    throw InvalidSizeError("grid size " + std::to_string(height) + "x" + std::to_string(width) +
                           " is not tileable by 2x2 circuits (both dimensions must be even and >= 2)");
  }
  if (pixel_count() > max_pixels) {
    throw InvalidSizeError("grid size " + std::to_string(height) + "x" + std::to_string(width) +
                           " exceeds the pixel cap of " + std::to_string(max_pixels));
  }
}

std::size_t GridSize::dual_edge_count() const {
  const auto h = static_cast<std::size_t>(height_);
  const auto w = static_cast<std::size_t>(width_);
  return (h * w - h - w) / 2;
}

CircuitId GridSize::circuit_of(PixelId id) const {
  const Pixel p = pixel(id);
  return static_cast<CircuitId>((p.row / 2) * circuit_cols() + p.col / 2);
}

bool are_four_adjacent(const GridSize& size, PixelId x, PixelId y) {
  const Pixel p = size.pixel(x);
  const Pixel q = size.pixel(y);
  return std::abs(p.row - q.row) + std::abs(p.col - q.col) == 1;
}

std::vector<Circuit> circuit_cover(const GridSize& size) {
  std::vector<Circuit> cover;
  cover.reserve(size.circuit_count());
  for (int cr = 0; cr < size.circuit_rows(); ++cr) {
    for (int cc = 0; cc < size.circuit_cols(); ++cc) {
      Circuit c;
      c.id = static_cast<CircuitId>(cr * size.circuit_cols() + cc);
      const int r = 2 * cr;
      const int col = 2 * cc;
      c.pixels = {size.pixel_id(r, col), size.pixel_id(r, col + 1), size.pixel_id(r + 1, col + 1),
                  size.pixel_id(r + 1, col)};
      for (int i = 0; i < 4; ++i) {
        c.edges[i] = PixelEdge::make(c.pixels[i], c.pixels[(i + 1) % 4]);
      }
      cover.push_back(c);
    }
  }
  return cover;
}

DualGraph::DualGraph(const GridSize& size) : size_(size) {
  const int rows = size.circuit_rows();
  const int cols = size.circuit_cols();
  edges_.reserve(size.dual_edge_count());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      const auto id = static_cast<CircuitId>(r * cols + c);
      edges_.push_back({id, id + 1, true});
    }
  }
  horizontal_count_ = edges_.size();
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto id = static_cast<CircuitId>(r * cols + c);
      edges_.push_back({id, id + static_cast<CircuitId>(cols), false});
    }
  }
  incident_.resize(vertex_count());
  for (DualEdgeId e = 0; e < edges_.size(); ++e) {
    incident_[edges_[e].a].push_back(e);
    incident_[edges_[e].b].push_back(e);
  }
  for (auto& list : incident_) std::sort(list.begin(), list.end());
}

PixelEdgeQuad cross_edges(const GridSize& size, const DualEdge& edge) {
  const int cols = size.circuit_cols();
  const int r = 2 * (static_cast<int>(edge.a) / cols);
  const int c = 2 * (static_cast<int>(edge.a) % cols);
  auto px = [&](int row, int col) { return size.pixel_id(row, col); };
  if (edge.horizontal) {
    return {PixelEdge::make(px(r, c + 1), px(r + 1, c + 1)), PixelEdge::make(px(r, c + 2), px(r + 1, c + 2)),
            PixelEdge::make(px(r, c + 1), px(r, c + 2)), PixelEdge::make(px(r + 1, c + 1), px(r + 1, c + 2))};
  }
  return {PixelEdge::make(px(r + 1, c), px(r + 1, c + 1)), PixelEdge::make(px(r + 2, c), px(r + 2, c + 1)),
          PixelEdge::make(px(r + 1, c), px(r + 2, c)), PixelEdge::make(px(r + 1, c + 1), px(r + 2, c + 1))};
}

PixelEdgeQuad cross_edges(const DualGraph& dual, DualEdgeId id) {
  if (id >= dual.edge_count()) {
    throw ContractError("dual edge id " + std::to_string(id) + " out of range");
  }
  return cross_edges(dual.size(), dual.edge(id));
}

LineGraph::LineGraph(const DualGraph& dual) : neighbors_(dual.edge_count()) {
  for (CircuitId v = 0; v < dual.vertex_count(); ++v) {
    const auto& inc = dual.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) {
        edges_.emplace_back(inc[i], inc[j]);
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());
  for (const auto& [a, b] : edges_) {
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());
}

}  // namespace ctxsfc
