#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ctxsfc/layers.hpp"
#include "ctxsfc/networks.hpp"

namespace ctxsfc {

struct GradientAuditOptions {
  std::size_t probes = 100;
  // Small enough that a step rarely crosses a ReLU kink in the deep conv
  // stack, large enough to stay clear of round-off.
  double step = 1e-6;
  // Relative error is |analytic - numeric| / max(|analytic|, |numeric|, floor).
  double floor = 1e-6;
  std::uint64_t seed = 0;
};

// Compares the gradients written by `backprop` (into Parameter::grad, after a
// zeroing pass) with central differences of `value` at randomly chosen
// parameter coordinates. Returns the largest relative error.
double gradient_audit(const std::vector<nn::Parameter*>& params, const std::function<double()>& value,
                      const std::function<void()>& backprop, const GradientAuditOptions& options);

// Audit of the evaluator's scalar output for one image and weight vector.
double finite_diff_check(WeightEvaluator& evaluator, std::span<const double> wbar, const Image& image,
                         const GradientAuditOptions& options = {});

// Audit of the generator through a fixed random projection of its weights.
double finite_diff_check(WeightGenerator& generator, const Image& image, const GradientAuditOptions& options = {});

}  // namespace ctxsfc
