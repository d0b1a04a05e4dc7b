#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ctxsfc {

using PixelId = std::uint32_t;     // row-major index into the pixel grid
using CircuitId = std::uint32_t;   // row-major index into the (H/2)x(W/2) circuit lattice
using DualEdgeId = std::uint32_t;  // index into DualGraph::edges

struct Pixel {
  int row = 0;
  int col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Dimensions of a pixel grid that can be tiled exactly by 2x2 circuits.
class GridSize {
 public:
  static constexpr std::size_t kDefaultMaxPixels = std::size_t{1} << 16;

  // Throws InvalidSizeError for odd or non-positive dimensions, or when
  // height*width exceeds max_pixels.
  GridSize(int height, int width, std::size_t max_pixels = kDefaultMaxPixels);

  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  }

  int circuit_rows() const { return height_ / 2; }
  int circuit_cols() const { return width_ / 2; }
  std::size_t circuit_count() const { return pixel_count() / 4; }
  // (HW - H - W) / 2
  std::size_t dual_edge_count() const;

  PixelId pixel_id(int row, int col) const {
    return static_cast<PixelId>(row * width_ + col);
  }
  Pixel pixel(PixelId id) const {
    return {static_cast<int>(id) / width_, static_cast<int>(id) % width_};
  }
  CircuitId circuit_of(PixelId id) const;

  friend bool operator==(const GridSize&, const GridSize&) = default;

 private:
  int height_;
  int width_;
};

// Undirected pixel edge, stored with a < b.
struct PixelEdge {
  PixelId a = 0;
  PixelId b = 0;

  static PixelEdge make(PixelId x, PixelId y) { return x < y ? PixelEdge{x, y} : PixelEdge{y, x}; }
  friend bool operator==(const PixelEdge&, const PixelEdge&) = default;
  friend auto operator<=>(const PixelEdge&, const PixelEdge&) = default;
};

bool are_four_adjacent(const GridSize& size, PixelId x, PixelId y);

// One 2x2 circuit. Pixels are listed clockwise from the top-left corner and
// edges[i] joins pixels[i] and pixels[(i + 1) % 4].
struct Circuit {
  CircuitId id = 0;
  std::array<PixelId, 4> pixels{};
  std::array<PixelEdge, 4> edges{};
};

std::vector<Circuit> circuit_cover(const GridSize& size);

struct DualEdge {
  CircuitId a = 0;  // a < b
  CircuitId b = 0;
  bool horizontal = true;
  friend bool operator==(const DualEdge&, const DualEdge&) = default;
};

// Graph over the circuit lattice. Edge order is canonical: all horizontal
// edges in row-major order, then all vertical edges in row-major order. This
// order fixes the layout of every weight vector in the library.
class DualGraph {
 public:
  explicit DualGraph(const GridSize& size);

  const GridSize& size() const { return size_; }
  std::size_t vertex_count() const { return size_.circuit_count(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t horizontal_edge_count() const { return horizontal_count_; }
  const std::vector<DualEdge>& edges() const { return edges_; }
  const DualEdge& edge(DualEdgeId id) const { return edges_.at(id); }

  // Dual edges incident to a circuit, ascending.
  const std::vector<DualEdgeId>& incident(CircuitId c) const { return incident_.at(c); }

 private:
  GridSize size_;
  std::size_t horizontal_count_ = 0;
  std::vector<DualEdge> edges_;
  std::vector<std::vector<DualEdgeId>> incident_;
};

inline DualGraph build_dual(const GridSize& size) { return DualGraph(size); }

// The 4-cycle exchanged when two adjacent circuits merge: e and f are the
// facing sides of the two circuits, u and w the edges that replace them.
// Horizontal dual edge: e is the right side of the left circuit, f the left
// side of the right circuit, u the upper and w the lower connecting edge.
// Vertical dual edge: e is the bottom side of the upper circuit, f the top
// side of the lower circuit, u the left and w the right connecting edge.
struct PixelEdgeQuad {
  PixelEdge e;
  PixelEdge f;
  PixelEdge u;
  PixelEdge w;
};

PixelEdgeQuad cross_edges(const GridSize& size, const DualEdge& edge);
PixelEdgeQuad cross_edges(const DualGraph& dual, DualEdgeId id);

// Line graph of the dual graph: node i is dual edge i, and two nodes are
// adjacent when their dual edges share a circuit.
class LineGraph {
 public:
  explicit LineGraph(const DualGraph& dual);

  std::size_t node_count() const { return neighbors_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  // Sorted (smaller, larger) node pairs.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t node) const { return neighbors_.at(node); }

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::vector<std::uint32_t>> neighbors_;
};

inline LineGraph build_line_graph(const DualGraph& dual) { return LineGraph(dual); }

}  // namespace ctxsfc
