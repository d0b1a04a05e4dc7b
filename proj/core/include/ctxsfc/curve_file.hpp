#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ctxsfc/order.hpp"

namespace ctxsfc {

// Text curve file:
//
//   ctxsfc-curve 1
//   kind <tag>
//   height <H>
//   width <W>
//   objective <name>      optional
//   seed <n>              optional
//   source <free text>    optional, rest of line
//   order
//   <H*W whitespace-separated row-major pixel indices>
//
// Tags are free-form single words (raster, serpentine, hilbert, dafner,
// mean-dafner, annealed, generated, scaled). Only "raster" is exempt from the
// adjacency check on read and write.
struct CurveFile {
  std::string kind;
  SfcOrder order;
  std::optional<std::string> objective;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> source;

  friend bool operator==(const CurveFile& a, const CurveFile& b) {
    return a.kind == b.kind && a.order.size == b.order.size && a.order.pixels == b.order.pixels &&
           a.objective == b.objective && a.seed == b.seed && a.source == b.source;
  }
};

bool exempt_from_adjacency(const std::string& kind);

// Throws ContractError if the order fails validation.
void write_curve(std::ostream& out, const CurveFile& curve);
void save_curve(const std::filesystem::path& path, const CurveFile& curve);

// Throws DataError on malformed text or an order that fails validation.
CurveFile read_curve(std::istream& in);
CurveFile load_curve(const std::filesystem::path& path);

}  // namespace ctxsfc
