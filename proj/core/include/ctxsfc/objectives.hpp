#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctxsfc/image.hpp"
#include "ctxsfc/order.hpp"

namespace ctxsfc {

// Objective to minimize: the negated lag-k autocorrelation or the LZW code
// length in bytes of the pixel sequence.
struct ObjectiveKind {
  enum class Type { neg_autocorrelation, lzw_length };

  Type type = Type::neg_autocorrelation;
  int lag = 6;  // only meaningful for neg_autocorrelation

  static ObjectiveKind neg_autocorrelation(int k) { return {Type::neg_autocorrelation, k}; }
  static ObjectiveKind lzw_length() { return {Type::lzw_length, 0}; }

  // "ac6", "lzw"
  std::string name() const;
  friend bool operator==(const ObjectiveKind&, const ObjectiveKind&) = default;
};

ObjectiveKind parse_objective(const std::string& name, int lag);

// values[t] = image at order[t]. Throws ContractError on a size mismatch.
std::vector<double> flatten(const Image& image, const SfcOrder& order);

// Inverse of flatten.
Image unflatten(std::span<const double> values, const SfcOrder& order);

// sum_i y_i y_{i+k} / sum_i y_i^2, no mean removal. Throws
// UndefinedObjectiveError for an all-zero sequence and ContractError for
// k outside [1, length).
double autocorrelation(std::span<const double> sequence, int lag);

// Quantizes to 8 bits and returns the LZW encoded length in bytes.
std::size_t lzw_length(std::span<const double> sequence);

// -rho_k or the LZW byte count.
double objective(const Image& image, const SfcOrder& order, const ObjectiveKind& kind);

inline constexpr double kNormalizedEpsilon = 1e-4;

// Maps a raw objective into (0, 1): (1 - rho_k) / 2 for the autocorrelation
// objective and L / (2 H W) for LZW, clipped to [eps, 1 - eps].
double normalize_objective(double raw, const ObjectiveKind& kind, std::size_t pixel_count);
double normalized_objective(const Image& image, const SfcOrder& order, const ObjectiveKind& kind);

// Mean of normalized_objective over a set of objectives, each weighted evenly.
double normalized_objective(const Image& image, const SfcOrder& order, std::span<const ObjectiveKind> kinds);

}  // namespace ctxsfc
