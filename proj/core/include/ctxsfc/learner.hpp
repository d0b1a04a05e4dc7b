#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ctxsfc/cover_merge.hpp"
#include "ctxsfc/networks.hpp"
#include "ctxsfc/objectives.hpp"

namespace ctxsfc {

// Normalized objective of each image under the order induced by `weights`
// (minimum spanning tree -> merge -> cut), averaged evenly over `kinds`. This
// is the ground truth the evaluator regresses and the energy the annealer
// minimizes.
std::vector<double> induced_objectives(const DualGraph& dual, std::span<const double> weights,
                                       std::span<const Image> images, std::span<const ObjectiveKind> kinds);
double mean_induced_objective(const DualGraph& dual, std::span<const double> weights, std::span<const Image> images,
                              std::span<const ObjectiveKind> kinds);

// Batch mean of Dafner weights over an image set.
EdgeWeights mean_dafner_weights(std::span<const Image> images);

// Batch mean of generator outputs over an image set.
EdgeWeights generate_set_weights(const WeightGenerator& generator, std::span<const Image> images,
                                 std::size_t chunk = 32);

struct TrainConfig {
  int batch_size = 16;
  double generator_learning_rate = 1e-3;
  double evaluator_learning_rate = 1e-2;
  double momentum = 0.9;
  double clip_norm = 1.0;
  // Per-example replacement of the generator's weights during the evaluator
  // step: Dafner weights with probability p_dafner, N(0, 1) samples with
  // probability p_noise.
  double p_dafner = 0.25;
  double p_noise = 0.25;
  std::vector<ObjectiveKind> objectives{ObjectiveKind::neg_autocorrelation(6)};
  int iterations = 2000;
  int eval_every = 50;
  std::size_t probe_images = 64;
  std::uint64_t seed = 0;
  NetworkShape shape;
};

// Throws ContractError for probabilities outside [0, 1] with sum > 1, an
// empty objective list, or non-positive batch size.
void validate(const TrainConfig& config);

struct StepRecord {
  int iteration = 0;
  double generator_loss = 0.0;  // mean evaluator estimate for the generator's weights
  double evaluator_loss = 0.0;  // batch mean squared error
};

struct EvalRecord {
  int iteration = 0;
  double probe_mse = 0.0;          // evaluator error on a fixed held-out probe set
  double holdout_objective = 0.0;  // mean normalized objective of the generator's set order
  std::optional<double> holdout_autocorrelation;  // mean rho_k for the first autocorrelation objective
  double seconds = 0.0;
};

struct TrainHistory {
  std::vector<StepRecord> steps;
  std::vector<EvalRecord> evals;
};

struct TrainResult {
  WeightGenerator generator;
  WeightEvaluator evaluator;
  TrainHistory history;
};

// Alternating optimization. Each iteration samples a batch and
//  (1) updates the generator to lower the frozen evaluator's estimate for the
//      batch-mean of its weights, then
//  (2) replaces each example's weights by the mixture above, computes the
//      true normalized objective of the induced order, and updates the
//      evaluator on the squared error.
// Deterministic for a given seed. Throws TrainingDivergedError on a
// non-finite loss.
TrainResult train(std::span<const Image> train_images, std::span<const Image> holdout, const TrainConfig& config,
                  const std::function<void(const EvalRecord&)>& on_eval = {});

// Mean squared error between estimates and ground truth.
double evaluator_loss(std::span<const double> estimates, std::span<const double> truth);

struct AnnealSchedule {
  std::size_t iterations = 20000;
  double initial_temperature = 1e-3;
  double final_temperature = 1e-6;
  // Proposal standard deviation as a multiple of the initial weights' spread.
  double proposal_scale = 0.5;
};

struct AnnealResult {
  EdgeWeights weights;  // best seen
  double initial_energy = 0.0;
  double best_energy = 0.0;
  std::size_t accepted = 0;
  std::vector<double> best_trace;  // best energy after each iteration
};

// Simulated annealing over edge weights, starting from the mean Dafner
// weights of the set. Proposals perturb one random coordinate by a Gaussian
// step; the energy is the mean normalized objective of the induced order;
// temperature cools geometrically. Returns the best weights seen.
AnnealResult anneal(std::span<const Image> images, const ObjectiveKind& kind, const AnnealSchedule& schedule,
                    std::uint64_t seed);

}  // namespace ctxsfc
