#include "ctxsfc/objectives.hpp"

#include <algorithm>

#include "ctxsfc/error.hpp"
#include "ctxsfc/lzw.hpp"

namespace ctxsfc {

std::string ObjectiveKind::name() const {
  return type == Type::lzw_length ? std::string("lzw") : "ac" + std::to_string(lag);
}

ObjectiveKind parse_objective(const std::string& name, int lag) {
  if (name == "lzw") return ObjectiveKind::lzw_length();
  if (name == "ac") return ObjectiveKind::neg_autocorrelation(lag);
  if (name.size() > 2 && name.starts_with("ac")) return ObjectiveKind::neg_autocorrelation(std::stoi(name.substr(2)));
  throw ContractError("unknown objective '" + name + "' (expected ac or lzw)");
}

namespace {

void check_dims(const Image& image, const SfcOrder& order) {
  if (image.height() != order.size.height() || image.width() != order.size.width()) {
    throw ContractError("image is " + std::to_string(image.height()) + "x" + std::to_string(image.width()) +
                        " but the order covers " + std::to_string(order.size.height()) + "x" +
                        std::to_string(order.size.width()));
  }
  if (order.pixels.size() != image.size()) throw ContractError("order length does not match the image");
}

}  // namespace

std::vector<double> flatten(const Image& image, const SfcOrder& order) {
  check_dims(image, order);
  std::vector<double> out(order.pixels.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = image[order.pixels[t]];
  return out;
}

Image unflatten(std::span<const double> values, const SfcOrder& order) {
  if (values.size() != order.pixels.size()) throw ContractError("sequence length does not match the order");
  Image image(order.size.height(), order.size.width());
  for (std::size_t t = 0; t < values.size(); ++t) image[order.pixels[t]] = values[t];
  return image;
}

double autocorrelation(std::span<const double> sequence, int lag) {
  if (lag < 1 || static_cast<std::size_t>(lag) >= sequence.size()) {
    throw ContractError("lag " + std::to_string(lag) + " must lie in [1, " + std::to_string(sequence.size()) + ")");
  }
  double energy = 0.0;
  for (double y : sequence) energy += y * y;
  if (energy <= 0.0) throw UndefinedObjectiveError("autocorrelation of an all-zero sequence is undefined");
  double cross = 0.0;
  const std::size_t k = static_cast<std::size_t>(lag);
  for (std::size_t i = 0; i + k < sequence.size(); ++i) cross += sequence[i] * sequence[i + k];
  return cross / energy;
}

std::size_t lzw_length(std::span<const double> sequence) {
  std::vector<std::uint8_t> bytes(sequence.size());
  std::transform(sequence.begin(), sequence.end(), bytes.begin(), quantize_sample);
  return lzw::encoded_length(bytes);
}

double objective(const Image& image, const SfcOrder& order, const ObjectiveKind& kind) {
  const std::vector<double> seq = flatten(image, order);
  if (kind.type == ObjectiveKind::Type::lzw_length) return static_cast<double>(lzw_length(seq));
  return -autocorrelation(seq, kind.lag);
}

double normalize_objective(double raw, const ObjectiveKind& kind, std::size_t pixel_count) {
  const double mapped = kind.type == ObjectiveKind::Type::lzw_length
                            ? raw / (2.0 * static_cast<double>(pixel_count))
                            : (1.0 + raw) / 2.0;  // raw = -rho
  return std::clamp(mapped, kNormalizedEpsilon, 1.0 - kNormalizedEpsilon);
}

double normalized_objective(const Image& image, const SfcOrder& order, const ObjectiveKind& kind) {
  return normalize_objective(objective(image, order, kind), kind, image.size());
}

double normalized_objective(const Image& image, const SfcOrder& order, std::span<const ObjectiveKind> kinds) {
  if (kinds.empty()) throw ContractError("at least one objective is required");
  const std::vector<double> seq = flatten(image, order);
  double total = 0.0;
  for (const ObjectiveKind& kind : kinds) {
    const double raw = kind.type == ObjectiveKind::Type::lzw_length ? static_cast<double>(lzw_length(seq))
                                                                    : -autocorrelation(seq, kind.lag);
    total += normalize_objective(raw, kind, image.size());
  }
  return total / static_cast<double>(kinds.size());
}

}  // namespace ctxsfc
