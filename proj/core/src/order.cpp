#include "ctxsfc/order.hpp"

#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

bool is_permutation(const SfcOrder& order) {
  const std::size_t n = order.size.pixel_count();
  if (order.pixels.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (PixelId p : order.pixels) {
    if (p >= n || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

bool has_adjacent_steps(const SfcOrder& order) {
  for (std::size_t t = 1; t < order.pixels.size(); ++t) {
    if (!are_four_adjacent(order.size, order.pixels[t - 1], order.pixels[t])) return false;
  }
  return true;
}

void validate_order(const SfcOrder& order, bool require_adjacency) {
  const std::size_t n = order.size.pixel_count();
  if (order.pixels.size() != n) {
    throw ContractError("order has " + std::to_string(order.pixels.size()) + " entries, grid has " +
                        std::to_string(n) + " pixels");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t t = 0; t < n; ++t) {
    const PixelId p = order.pixels[t];
    if (p >= n) throw ContractError("order entry " + std::to_string(t) + " is out of range");
    if (seen[p]) throw ContractError("pixel " + std::to_string(p) + " is visited twice");
    seen[p] = true;
    if (require_adjacency && t > 0 && !are_four_adjacent(order.size, order.pixels[t - 1], p)) {
      throw ContractError("order steps " + std::to_string(t - 1) + " -> " + std::to_string(t) +
                          " are not 4-adjacent");
    }
  }
}

std::vector<std::size_t> inverse_order(const SfcOrder& order) {
  std::vector<std::size_t> pos(order.pixels.size());
  for (std::size_t t = 0; t < order.pixels.size(); ++t) pos[order.pixels[t]] = t;
  return pos;
}

}  // namespace ctxsfc
