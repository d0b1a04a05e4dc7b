#include "ctxsfc/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

EdgeWeights generate_set_weights(const WeightGenerator& generator, std::span<const Image> images, std::size_t chunk) {
  if (images.empty()) throw ContractError("set weights of an empty image set");
  const std::size_t m = generator.dual().edge_count();
  EdgeWeights total(m, 0.0);
  for (std::size_t start = 0; start < images.size(); start += chunk) {
    const std::size_t count = std::min(chunk, images.size() - start);
    const nn::Matrix w = generator.forward(images.subspan(start, count), nullptr);
    const Eigen::RowVectorXd sum = w.colwise().sum();
    for (std::size_t e = 0; e < m; ++e) total[e] += sum(static_cast<Eigen::Index>(e));
  }
  for (double& v : total) v /= static_cast<double>(images.size());
  return total;
}

double evaluator_loss(std::span<const double> estimates, std::span<const double> truth) {
  if (estimates.size() != truth.size()) throw ContractError("estimate and truth counts differ");
  if (estimates.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) total += (estimates[i] - truth[i]) * (estimates[i] - truth[i]);
  return total / static_cast<double>(estimates.size());
}

void validate(const TrainConfig& config) {
  if (config.batch_size < 1) throw ContractError("batch size must be positive");
  if (config.p_dafner < 0.0 || config.p_noise < 0.0 || config.p_dafner + config.p_noise > 1.0) {
    throw ContractError("mixture probabilities must be non-negative with p_dafner + p_noise <= 1");
  }
  if (config.objectives.empty()) throw ContractError("at least one training objective is required");
  if (config.iterations < 0 || config.eval_every < 1) throw ContractError("iterations >= 0 and eval_every >= 1");
}

namespace {

// Per-example weight source for the evaluator step.
nn::Matrix mixture_weights(const nn::Matrix& generated, std::span<const Image> images, const DualGraph& dual,
                           const TrainConfig& config, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  nn::Matrix out = generated;
  for (Eigen::Index b = 0; b < out.rows(); ++b) {
    const double u = unit(rng);
    if (u < config.p_dafner) {
      const EdgeWeights w = dafner_weights(images[static_cast<std::size_t>(b)], dual);
      out.row(b) = Eigen::Map<const Eigen::RowVectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    } else if (u < config.p_dafner + config.p_noise) {
      for (Eigen::Index e = 0; e < out.cols(); ++e) out(b, e) = normal(rng);
    }
  }
  return out;
}

EdgeWeights row_mean(const nn::Matrix& rows) {
  const Eigen::RowVectorXd mean = rows.colwise().mean();
  return EdgeWeights(mean.data(), mean.data() + mean.size());
}

void check_finite(double value, const char* what, int iteration) {
  if (!std::isfinite(value)) {
    throw TrainingDivergedError(std::string(what) + " became non-finite at iteration " + std::to_string(iteration));
  }
}

}  // namespace

TrainResult train(std::span<const Image> train_images, std::span<const Image> holdout, const TrainConfig& config,
                  const std::function<void(const EvalRecord&)>& on_eval) {
  validate(config);
  if (train_images.empty()) throw ContractError("training set is empty");
  const GridSize size(train_images[0].height(), train_images[0].width());
  for (const Image& img : train_images) {
    if (img.height() != size.height() || img.width() != size.width()) {
      throw ContractError("training images must share one size");
    }
  }

  std::mt19937_64 rng(config.seed);
  TrainResult result{WeightGenerator(size, config.shape, rng()), WeightEvaluator(size, config.shape, rng()), {}};
  WeightGenerator& gen = result.generator;
  WeightEvaluator& eval = result.evaluator;
  const DualGraph& dual = gen.dual();
  const std::uint64_t probe_seed = rng();

  const nn::SgdMomentum gen_opt{config.generator_learning_rate, config.momentum, config.clip_norm};
  const nn::SgdMomentum eval_opt{config.evaluator_learning_rate, config.momentum, config.clip_norm};
  const std::vector<nn::Parameter*> gen_params = gen.parameters();
  const std::vector<nn::Parameter*> eval_params = eval.parameters();

  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(config.batch_size), train_images.size());
  std::vector<std::size_t> perm(train_images.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::size_t cursor = 0;

  const std::span<const Image> probe = holdout.subspan(0, std::min(config.probe_images, holdout.size()));
  const auto started = std::chrono::steady_clock::now();

  auto evaluate = [&](int iteration) {
    EvalRecord rec;
    rec.iteration = iteration;
    if (!probe.empty()) {
      std::mt19937_64 probe_rng(probe_seed);
      std::vector<double> estimates;
      std::vector<double> truth;
      for (std::size_t start = 0; start < probe.size(); start += batch) {
        const auto group = probe.subspan(start, std::min(batch, probe.size() - start));
        const nn::Matrix generated = gen.forward(group, nullptr);
        const EdgeWeights wbar = row_mean(mixture_weights(generated, group, dual, config, probe_rng));
        const auto features = eval.encode(group, false);
        for (double v : eval.predict(features, wbar, nullptr)) estimates.push_back(v);
        for (double v : induced_objectives(dual, wbar, group, config.objectives)) truth.push_back(v);
      }
      rec.probe_mse = evaluator_loss(estimates, truth);
    }
    if (!holdout.empty()) {
      const EdgeWeights wbar = generate_set_weights(gen, holdout);
      rec.holdout_objective = mean_induced_objective(dual, wbar, holdout, config.objectives);
      const auto ac = std::find_if(config.objectives.begin(), config.objectives.end(), [](const ObjectiveKind& k) {
        return k.type == ObjectiveKind::Type::neg_autocorrelation;
      });
      if (ac != config.objectives.end()) {
        const SfcOrder order = sfc_from_weights(dual, wbar);
        double total = 0.0;
        for (const Image& img : holdout) total += -objective(img, order, *ac);
        rec.holdout_autocorrelation = total / static_cast<double>(holdout.size());
      }
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.history.evals.push_back(rec);
    if (on_eval) on_eval(rec);
  };

  std::vector<Image> images;
  images.reserve(batch);
  for (int it = 1; it <= config.iterations; ++it) {
    images.clear();
    for (std::size_t b = 0; b < batch; ++b) {
      if (cursor == perm.size()) {
        std::shuffle(perm.begin(), perm.end(), rng);
        cursor = 0;
      }
      images.push_back(train_images[perm[cursor++]]);
    }
    const auto bsz = static_cast<Eigen::Index>(images.size());
    StepRecord step;
    step.iteration = it;

    // Generator step against the frozen evaluator.
    gen.zero_grad();
    WeightGenerator::Tape gen_tape;
    const nn::Matrix generated = gen.forward(images, &gen_tape);
    const EdgeWeights wbar = row_mean(generated);
    const WeightEvaluator::ImageFeatures features = eval.encode(images, true);
    WeightEvaluator::HeadTape head;
    const std::vector<double> estimate = eval.predict(features, wbar, &head);
    step.generator_loss = std::accumulate(estimate.begin(), estimate.end(), 0.0) / static_cast<double>(bsz);
    check_finite(step.generator_loss, "generator loss", it);
    const std::vector<double> upstream(estimate.size(), 1.0 / static_cast<double>(bsz));
    const std::vector<double> dwbar = eval.predict_backward(head, upstream, false, nullptr);
    nn::Matrix dgen(bsz, generated.cols());
    for (Eigen::Index b = 0; b < bsz; ++b) {
      for (Eigen::Index e = 0; e < dgen.cols(); ++e) dgen(b, e) = dwbar[static_cast<std::size_t>(e)] / static_cast<double>(bsz);
    }
    gen.backward(gen_tape, dgen);
    gen_opt.step(gen_params);

    // Evaluator step on mixed weights and true objectives. The image encoding
    // is reused: the evaluator's parameters have not changed since.
    eval.zero_grad();
    const EdgeWeights mixed = row_mean(mixture_weights(generated, images, dual, config, rng));
    const std::vector<double> truth = induced_objectives(dual, mixed, images, config.objectives);
    WeightEvaluator::HeadTape eval_head;
    const std::vector<double> predicted = eval.predict(features, mixed, &eval_head);
    step.evaluator_loss = evaluator_loss(predicted, truth);
    check_finite(step.evaluator_loss, "evaluator loss", it);
    std::vector<double> dpred(predicted.size());
    for (std::size_t b = 0; b < predicted.size(); ++b) {
      dpred[b] = 2.0 * (predicted[b] - truth[b]) / static_cast<double>(predicted.size());
    }
    nn::Matrix grad_pooled;
    eval.predict_backward(eval_head, dpred, true, &grad_pooled);
    eval.encoder_backward(features, grad_pooled);
    eval_opt.step(eval_params);

    result.history.steps.push_back(step);
    if (it % config.eval_every == 0 || it == config.iterations) evaluate(it);
  }
  return result;
}

}  // namespace ctxsfc
