#pragma once

#include <vector>

#include "ctxsfc/grid.hpp"

namespace ctxsfc {

// A scan order over every pixel of a grid. Orders produced by cover-and-merge,
// serpentine, Hilbert and scale_order also have 4-adjacent consecutive pixels;
// raster is the one order kept here that does not.
struct SfcOrder {
  GridSize size;
  std::vector<PixelId> pixels;
};

bool is_permutation(const SfcOrder& order);
bool has_adjacent_steps(const SfcOrder& order);

// Throws ContractError naming the first violation.
void validate_order(const SfcOrder& order, bool require_adjacency = true);

// position[pixel] = index of that pixel in the order.
std::vector<std::size_t> inverse_order(const SfcOrder& order);

}  // namespace ctxsfc
