#include "ctxsfc/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ctxsfc {

double gradient_audit(const std::vector<nn::Parameter*>& params, const std::function<double()>& value,
                      const std::function<void()>& backprop, const GradientAuditOptions& options) {
  for (nn::Parameter* p : params) p->zero_grad();
  backprop();

  const std::size_t total = nn::parameter_count(params);
  if (total == 0) return 0.0;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, total - 1);
  double worst = 0.0;
  for (std::size_t probe = 0; probe < options.probes; ++probe) {
    std::size_t flat = pick(rng);
    nn::Parameter* target = nullptr;
    for (nn::Parameter* p : params) {
      const auto size = static_cast<std::size_t>(p->value.size());
      if (flat < size) {
        target = p;
        break;
      }
      flat -= size;
    }
    double& coord = target->value.data()[flat];
    const double saved = coord;
    coord = saved + options.step;
    const double up = value();
    coord = saved - options.step;
    const double down = value();
    coord = saved;
    const double numeric = (up - down) / (2.0 * options.step);
    const double analytic = target->grad.data()[flat];
    const double denom = std::max({std::abs(analytic), std::abs(numeric), options.floor});
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
  }
  return worst;
}

double finite_diff_check(WeightEvaluator& evaluator, std::span<const double> wbar, const Image& image,
                         const GradientAuditOptions& options) {
  const std::span<const Image> batch(&image, 1);
  auto value = [&] { return evaluator.evaluate(wbar, image); };
  auto backprop = [&] {
    const auto features = evaluator.encode(batch, true);
    WeightEvaluator::HeadTape tape;
    evaluator.predict(features, wbar, &tape);
    const double one = 1.0;
    nn::Matrix grad_pooled;
    evaluator.predict_backward(tape, std::span<const double>(&one, 1), true, &grad_pooled);
    evaluator.encoder_backward(features, grad_pooled);
  };
  return gradient_audit(evaluator.parameters(), value, backprop, options);
}

double finite_diff_check(WeightGenerator& generator, const Image& image, const GradientAuditOptions& options) {
  const std::span<const Image> batch(&image, 1);
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> normal;
  nn::Matrix projection(1, static_cast<Eigen::Index>(generator.dual().edge_count()));
  for (Eigen::Index i = 0; i < projection.size(); ++i) projection.data()[i] = normal(rng);

  auto value = [&] { return (generator.forward(batch, nullptr).array() * projection.array()).sum(); };
  auto backprop = [&] {
    WeightGenerator::Tape tape;
    generator.forward(batch, &tape);
    generator.backward(tape, projection);
  };
  return gradient_audit(generator.parameters(), value, backprop, options);
}

}  // namespace ctxsfc
