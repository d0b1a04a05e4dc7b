#include "ctxsfc/cover_merge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

HamiltonianCircuit::HamiltonianCircuit(const GridSize& size)
    : size_(size), neighbors_(size.pixel_count(), {0, 0}) {}

void HamiltonianCircuit::relink(PixelId a, PixelId b, PixelId c) {
  auto& slots = neighbors_[a];
  if (slots[0] == b) {
    slots[0] = c;
  } else if (slots[1] == b) {
    slots[1] = c;
  } else {
    throw ContractError("pixel " + std::to_string(a) + " has no edge to " + std::to_string(b));
  }
}

bool HamiltonianCircuit::is_single_cycle() const {
  const std::size_t n = neighbors_.size();
  for (PixelId p = 0; p < n; ++p) {
    for (PixelId q : neighbors_[p]) {
      if (q >= n || q == p || !are_four_adjacent(size_, p, q)) return false;
      const auto& back = neighbors_[q];
      if (back[0] != p && back[1] != p) return false;
    }
    if (neighbors_[p][0] == neighbors_[p][1]) return false;
  }
  std::size_t steps = 0;
  PixelId prev = 0;
  PixelId cur = neighbors_[0][0];
  ++steps;
  while (cur != 0 && steps <= n) {
    const auto& nb = neighbors_[cur];
    const PixelId next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    ++steps;
  }
  return cur == 0 && steps == n;
}

std::vector<PixelEdge> HamiltonianCircuit::edge_set() const {
  std::vector<PixelEdge> edges;
  for (PixelId p = 0; p < neighbors_.size(); ++p) {
    for (PixelId q : neighbors_[p]) {
      if (p < q) edges.push_back({p, q});
    }
  }
  return edges;
}

EdgeWeights dafner_weights(const Image& image, const DualGraph& dual) {
  const GridSize& size = dual.size();
  if (image.height() != size.height() || image.width() != size.width()) {
    throw ContractError("image is " + std::to_string(image.height()) + "x" + std::to_string(image.width()) +
                        " but the dual graph expects " + std::to_string(size.height()) + "x" +
                        std::to_string(size.width()));
  }
  auto cost = [&](const PixelEdge& e) { return std::abs(image[e.a] - image[e.b]); };
  EdgeWeights weights(dual.edge_count());
  for (DualEdgeId id = 0; id < dual.edge_count(); ++id) {
    const PixelEdgeQuad q = cross_edges(size, dual.edge(id));
    weights[id] = cost(q.u) + cost(q.w) - cost(q.e) - cost(q.f);
  }
  return weights;
}

EdgeWeights dafner_weights(const Image& image) {
  return dafner_weights(image, DualGraph(GridSize(image.height(), image.width())));
}

SpanningTree minimum_spanning_tree(const DualGraph& dual, std::span<const double> weights) {
  if (weights.size() != dual.edge_count()) {
    throw ContractError("expected " + std::to_string(dual.edge_count()) + " edge weights, got " +
                        std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw ContractError("edge weights must be finite");
  }
  const std::size_t n = dual.vertex_count();
  SpanningTree tree;
  tree.edges.reserve(n - 1);

  using Entry = std::tuple<double, DualEdgeId, CircuitId>;  // (weight, edge, far endpoint)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<bool> in_tree(n, false);
  auto visit = [&](CircuitId v) {
    in_tree[v] = true;
    for (DualEdgeId e : dual.incident(v)) {
      const DualEdge& edge = dual.edge(e);
      const CircuitId other = edge.a == v ? edge.b : edge.a;
      if (!in_tree[other]) heap.emplace(weights[e], e, other);
    }
  };
  visit(0);
  while (!heap.empty() && tree.edges.size() + 1 < n) {
    const auto [w, e, v] = heap.top();
    heap.pop();
    if (in_tree[v]) continue;
    tree.edges.push_back(e);
    visit(v);
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

double tree_weight(const SpanningTree& tree, std::span<const double> weights) {
  double total = 0.0;
  for (DualEdgeId e : tree.edges) total += weights[e];
  return total;
}

namespace {

CircuitId find_root(std::vector<CircuitId>& parent, CircuitId x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

void check_spanning_tree(const DualGraph& dual, const SpanningTree& tree) {
  const std::size_t n = dual.vertex_count();
  if (tree.edges.size() + 1 != n) {
    throw ContractError("a spanning tree of " + std::to_string(n) + " circuits needs " + std::to_string(n - 1) +
                        " edges, got " + std::to_string(tree.edges.size()));
  }
  std::vector<CircuitId> parent(n);
  std::iota(parent.begin(), parent.end(), CircuitId{0});
  for (DualEdgeId e : tree.edges) {
    if (e >= dual.edge_count()) throw ContractError("tree edge " + std::to_string(e) + " out of range");
    const CircuitId ra = find_root(parent, dual.edge(e).a);
    const CircuitId rb = find_root(parent, dual.edge(e).b);
    if (ra == rb) throw ContractError("tree edges contain a cycle at dual edge " + std::to_string(e));
    parent[ra] = rb;
  }
}

}  // namespace

HamiltonianCircuit merge(const DualGraph& dual, const SpanningTree& tree) {
  check_spanning_tree(dual, tree);
  const GridSize& size = dual.size();
  HamiltonianCircuit circuit(size);
  for (const Circuit& c : circuit_cover(size)) {
    for (int i = 0; i < 4; ++i) {
      circuit.set_neighbors(c.pixels[i], c.pixels[(i + 3) % 4], c.pixels[(i + 1) % 4]);
    }
  }
  for (DualEdgeId id : tree.edges) {
    const PixelEdgeQuad q = cross_edges(size, dual.edge(id));
    // e = (e.a, e.b) and f = (f.a, f.b) face each other; u joins e.a-f.a and
    // w joins e.b-f.b.
    circuit.relink(q.e.a, q.e.b, q.f.a);
    circuit.relink(q.e.b, q.e.a, q.f.b);
    circuit.relink(q.f.a, q.f.b, q.e.a);
    circuit.relink(q.f.b, q.f.a, q.e.b);
  }
  return circuit;
}

SfcOrder cut_to_order(const HamiltonianCircuit& circuit) {
  const std::size_t n = circuit.size().pixel_count();
  SfcOrder order{circuit.size(), {}};
  order.pixels.reserve(n);
  const auto& start = circuit.neighbors(0);
  PixelId prev = 0;
  PixelId cur = std::min(start[0], start[1]);
  order.pixels.push_back(0);
  while (order.pixels.size() < n) {
    order.pixels.push_back(cur);
    const auto& nb = circuit.neighbors(cur);
    const PixelId next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return order;
}

SfcOrder sfc_from_weights(const DualGraph& dual, std::span<const double> weights) {
  return cut_to_order(merge(dual, minimum_spanning_tree(dual, weights)));
}

SfcOrder sfc_from_weights(const GridSize& size, std::span<const double> weights) {
  return sfc_from_weights(DualGraph(size), weights);
}

}  // namespace ctxsfc
