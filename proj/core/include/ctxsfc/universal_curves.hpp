#pragma once

#include <optional>
#include <string_view>

#include "ctxsfc/order.hpp"

namespace ctxsfc {

enum class CurveKind { raster, serpentine, hilbert };

std::string_view to_string(CurveKind kind);
std::optional<CurveKind> parse_curve_kind(std::string_view name);

// raster: row-major (not adjacency-preserving at row ends).
// serpentine: row-major with alternating row direction.
// hilbert: requires H = W = 2^m; starts at (0,0) and ends at (2^m - 1, 0).
// Throws UnsupportedSizeError for Hilbert on other sizes.
SfcOrder universal_order(CurveKind kind, const GridSize& size);

// Doubles the resolution of an adjacency-preserving order. Each parent pixel
// becomes a 2x2 block visited contiguously (positions 4i..4i+3); the route
// inside a block enters next to the previous block's exit and leaves toward
// the next parent (straight, left or right turn). The first block starts at
// the child corner nearest the grid corner of the first parent. Throws
// ContractError if consecutive parents are not 4-adjacent.
SfcOrder scale_order(const SfcOrder& order);

}  // namespace ctxsfc
