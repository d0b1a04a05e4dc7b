#include "ctxsfc/learner.hpp"

#include <cmath>
#include <random>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

std::vector<double> induced_objectives(const DualGraph& dual, std::span<const double> weights,
                                       std::span<const Image> images, std::span<const ObjectiveKind> kinds) {
  const SfcOrder order = sfc_from_weights(dual, weights);
  std::vector<double> out;
  out.reserve(images.size());
  for (const Image& img : images) out.push_back(normalized_objective(img, order, kinds));
  return out;
}

double mean_induced_objective(const DualGraph& dual, std::span<const double> weights, std::span<const Image> images,
                              std::span<const ObjectiveKind> kinds) {
  if (images.empty()) throw ContractError("mean objective over an empty image set");
  double total = 0.0;
  for (double v : induced_objectives(dual, weights, images, kinds)) total += v;
  return total / static_cast<double>(images.size());
}

EdgeWeights mean_dafner_weights(std::span<const Image> images) {
  if (images.empty()) throw ContractError("mean Dafner weights of an empty image set");
  const DualGraph dual(GridSize(images[0].height(), images[0].width()));
  std::vector<EdgeWeights> all;
  all.reserve(images.size());
  for (const Image& img : images) all.push_back(dafner_weights(img, dual));
  return batch_mean_weights(all);
}

AnnealResult anneal(std::span<const Image> images, const ObjectiveKind& kind, const AnnealSchedule& schedule,
                    std::uint64_t seed) {
  if (images.empty()) throw ContractError("annealing needs at least one image");
  const DualGraph dual(GridSize(images[0].height(), images[0].width()));
  const std::span<const ObjectiveKind> kinds(&kind, 1);

  AnnealResult result;
  EdgeWeights current = mean_dafner_weights(images);
  result.weights = current;
  double energy = mean_induced_objective(dual, current, images, kinds);
  result.initial_energy = energy;
  result.best_energy = energy;
  result.best_trace.reserve(schedule.iterations);
  if (schedule.iterations == 0 || current.empty()) return result;

  double mean = 0.0;
  for (double w : current) mean += w;
  mean /= static_cast<double>(current.size());
  double var = 0.0;
  for (double w : current) var += (w - mean) * (w - mean);
  const double spread = std::sqrt(var / static_cast<double>(current.size()));
  const double sigma = schedule.proposal_scale * (spread > 1e-9 ? spread : 1.0 / 255.0);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, current.size() - 1);
  std::normal_distribution<double> step(0.0, sigma);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ratio = schedule.final_temperature / schedule.initial_temperature;

  for (std::size_t it = 0; it < schedule.iterations; ++it) {
    const double frac = schedule.iterations > 1 ? static_cast<double>(it) / static_cast<double>(schedule.iterations - 1) : 1.0;
    const double temperature = schedule.initial_temperature * std::pow(ratio, frac);
    const std::size_t coord = pick(rng);
    const double saved = current[coord];
    current[coord] += step(rng);
    const double candidate = mean_induced_objective(dual, current, images, kinds);
    const double delta = candidate - energy;
    if (delta <= 0.0 || unit(rng) < std::exp(-delta / temperature)) {
      energy = candidate;
      ++result.accepted;
      if (energy < result.best_energy) {
        result.best_energy = energy;
        result.weights = current;
      }
    } else {
      current[coord] = saved;
    }
    result.best_trace.push_back(result.best_energy);
  }
  return result;
}

}  // namespace ctxsfc
