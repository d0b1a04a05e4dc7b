#pragma once

#include <array>
#include <span>
#include <vector>

#include "ctxsfc/grid.hpp"
#include "ctxsfc/image.hpp"
#include "ctxsfc/order.hpp"

namespace ctxsfc {

// One weight per dual edge, in canonical DualEdgeId order. The weights fully
// determine the scan order produced by sfc_from_weights.
using EdgeWeights = std::vector<double>;

struct SpanningTree {
  std::vector<DualEdgeId> edges;  // ascending
};

// Every pixel keeps exactly two cycle neighbors.
class HamiltonianCircuit {
 public:
  explicit HamiltonianCircuit(const GridSize& size);

  const GridSize& size() const { return size_; }
  const std::array<PixelId, 2>& neighbors(PixelId p) const { return neighbors_[p]; }

  // Replaces the edge a-b with a-c (b is dropped from a's neighbor slots).
  void relink(PixelId a, PixelId b, PixelId c);
  void set_neighbors(PixelId p, PixelId first, PixelId second) { neighbors_[p] = {first, second}; }

  // Degree-2 consistency plus a single cycle through every pixel.
  bool is_single_cycle() const;
  std::vector<PixelEdge> edge_set() const;

 private:
  GridSize size_;
  std::vector<std::array<PixelId, 2>> neighbors_;
};

// Edge weight |u| + |w| - |e| - |f|, where |.| is the absolute intensity
// difference across a pixel edge: the cost of exchanging the facing circuit
// sides for the connecting edges.
EdgeWeights dafner_weights(const Image& image, const DualGraph& dual);
EdgeWeights dafner_weights(const Image& image);

// Prim's algorithm with a binary heap. Ties break toward the smaller
// DualEdgeId, so the result is the unique minimum tree under the order
// (weight, id). Throws ContractError on length mismatch or non-finite weights.
SpanningTree minimum_spanning_tree(const DualGraph& dual, std::span<const double> weights);

double tree_weight(const SpanningTree& tree, std::span<const double> weights);

// Starts from the raw circuit cover and, for each tree edge, swaps the facing
// sides e, f for the connecting edges u, w. Throws ContractError if the edge
// set is not a spanning tree of the dual graph.
HamiltonianCircuit merge(const DualGraph& dual, const SpanningTree& tree);

// Breaks the circuit at pixel 0, stepping first to its smaller neighbor.
SfcOrder cut_to_order(const HamiltonianCircuit& circuit);

// minimum_spanning_tree -> merge -> cut_to_order.
SfcOrder sfc_from_weights(const DualGraph& dual, std::span<const double> weights);
SfcOrder sfc_from_weights(const GridSize& size, std::span<const double> weights);

}  // namespace ctxsfc
