#include "ctxsfc/networks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

namespace {

constexpr double kStandardizeEpsilon = 1e-8;

double sigmoid(double x) {
  const double s = 1.0 / (1.0 + std::exp(-x));
  return std::clamp(s, 1e-15, 1.0 - 1e-15);
}

}  // namespace

WeightEvaluator::WeightEvaluator(const GridSize& size, const NetworkShape& shape, std::uint64_t seed)
    : size_(size), shape_(shape), dual_(size), adjacency_(nn::normalized_adjacency(LineGraph(dual_))) {
  if (shape.width < 1 || shape.residual_blocks < 0 || shape.gnn_blocks < 1) {
    throw ContractError("network needs width >= 1, residual blocks >= 0 and at least one GNN block");
  }
  act_.linear = shape.linear;
  std::mt19937_64 rng(seed);
  encoder_ = nn::LatticeEncoder(size, shape.width, shape.residual_blocks, rng, act_);
  for (int l = 0; l < shape.gnn_blocks; ++l) {
    gnn_.emplace_back("gnn" + std::to_string(l), l == 0 ? shape.width + 1 : shape.width, shape.width, true, rng);
  }
  hidden_ = nn::Linear("head.hidden", shape.width, shape.width, rng);
  output_ = nn::Linear("head.output", shape.width, 1, rng, 0.1);
}

WeightEvaluator::ImageFeatures WeightEvaluator::encode(std::span<const Image> images, bool keep_tape) const {
  for (const Image& img : images) {
    if (img.height() != size_.height() || img.width() != size_.width()) {
      throw ContractError("evaluator built for " + std::to_string(size_.height()) + "x" +
                          std::to_string(size_.width()) + " got a " + std::to_string(img.height()) + "x" +
                          std::to_string(img.width()) + " image");
    }
  }
  ImageFeatures f;
  f.batch = static_cast<int>(images.size());
  const nn::Matrix h = encoder_.forward(images, keep_tape ? &f.tape : nullptr);
  f.pooled = nn::pool_edge_features(h, f.batch, dual_);
  return f;
}

std::vector<double> WeightEvaluator::predict(const ImageFeatures& features, std::span<const double> wbar,
                                             HeadTape* tape) const {
  const auto m = static_cast<Eigen::Index>(dual_.edge_count());
  if (static_cast<Eigen::Index>(wbar.size()) != m) {
    throw ContractError("evaluator expects " + std::to_string(m) + " edge weights, got " +
                        std::to_string(wbar.size()));
  }
  const int batch = features.batch;
  const int d = shape_.width;

  double mean = 0.0;
  for (double w : wbar) mean += w;
  mean /= std::max<double>(1.0, static_cast<double>(m));
  double var = 0.0;
  for (double w : wbar) var += (w - mean) * (w - mean);
  var /= std::max<double>(1.0, static_cast<double>(m));
  const double inv_scale = 1.0 / std::sqrt(var + kStandardizeEpsilon);
  std::vector<double> z(wbar.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (wbar[i] - mean) * inv_scale;

  nn::Matrix x(batch * m, d + 1);
  x.leftCols(d) = features.pooled;
  for (int b = 0; b < batch; ++b) {
    for (Eigen::Index e = 0; e < m; ++e) x(b * m + e, d) = z[static_cast<std::size_t>(e)];
  }
  if (tape) {
    tape->batch = batch;
    tape->standardized = z;
    tape->inv_scale = inv_scale;
    tape->input = x;
    tape->gnn.resize(gnn_.size());
  }
  for (std::size_t l = 0; l < gnn_.size(); ++l) {
    x = gnn_[l].forward(adjacency_, x, batch, act_, tape ? &tape->gnn[l] : nullptr);
  }
  nn::Matrix node_mean = nn::Matrix::Zero(batch, d);
  if (m > 0) {
    for (int b = 0; b < batch; ++b) node_mean.row(b) = x.middleRows(b * m, m).colwise().mean();
  }
  nn::Matrix hidden = hidden_.forward(node_mean);
  act_.apply(hidden);
  nn::Matrix out = output_.forward(hidden);
  if (!shape_.linear) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out.data()[i] = sigmoid(out.data()[i]);
  }
  if (tape) {
    tape->node_mean = node_mean;
    tape->hidden = hidden;
    tape->output = out;
  }
  return std::vector<double>(out.data(), out.data() + out.size());
}

std::vector<double> WeightEvaluator::predict_backward(const HeadTape& tape, std::span<const double> grad_output,
                                                      bool accumulate, nn::Matrix* grad_pooled) {
  const auto m = static_cast<Eigen::Index>(dual_.edge_count());
  const int batch = tape.batch;
  const int d = shape_.width;
  nn::Matrix dlogit(batch, 1);
  for (int b = 0; b < batch; ++b) {
    const double y = tape.output(b, 0);
    dlogit(b, 0) = grad_output[static_cast<std::size_t>(b)] * (shape_.linear ? 1.0 : y * (1.0 - y));
  }
  nn::Matrix dhidden = output_.backward(tape.hidden, dlogit, accumulate);
  act_.backprop(tape.hidden, dhidden);
  const nn::Matrix dmean = hidden_.backward(tape.node_mean, dhidden, accumulate);

  nn::Matrix grad(batch * m, d);
  for (int b = 0; b < batch; ++b) {
    for (Eigen::Index e = 0; e < m; ++e) grad.row(b * m + e) = dmean.row(b) / static_cast<double>(m);
  }
  for (std::size_t l = gnn_.size(); l-- > 0;) {
    grad = gnn_[l].backward(adjacency_, tape.gnn[l], std::move(grad), batch, act_, accumulate);
  }
  if (grad_pooled) *grad_pooled = grad.leftCols(d);

  std::vector<double> dz(static_cast<std::size_t>(m), 0.0);
  for (int b = 0; b < batch; ++b) {
    for (Eigen::Index e = 0; e < m; ++e) dz[static_cast<std::size_t>(e)] += grad(b * m + e, d);
  }
  // Backward through z = (w - mean) / sqrt(var + eps).
  double mean_dz = 0.0;
  double mean_dz_z = 0.0;
  for (std::size_t i = 0; i < dz.size(); ++i) {
    mean_dz += dz[i];
    mean_dz_z += dz[i] * tape.standardized[i];
  }
  if (m > 0) {
    mean_dz /= static_cast<double>(m);
    mean_dz_z /= static_cast<double>(m);
  }
  std::vector<double> dw(dz.size());
  for (std::size_t i = 0; i < dz.size(); ++i) {
    dw[i] = tape.inv_scale * (dz[i] - mean_dz - tape.standardized[i] * mean_dz_z);
  }
  return dw;
}

void WeightEvaluator::encoder_backward(const ImageFeatures& features, const nn::Matrix& grad_pooled) {
  encoder_.backward(features.tape, nn::pool_edge_features_backward(grad_pooled, features.batch, dual_));
}

double WeightEvaluator::evaluate(std::span<const double> wbar, const Image& image) const {
  const ImageFeatures f = encode(std::span<const Image>(&image, 1), false);
  return predict(f, wbar, nullptr).front();
}

std::vector<nn::Parameter*> WeightEvaluator::parameters() {
  std::vector<nn::Parameter*> out = encoder_.parameters();
  for (auto& layer : gnn_) {
    for (nn::Parameter* p : layer.parameters()) out.push_back(p);
  }
  for (nn::Parameter* p : hidden_.parameters()) out.push_back(p);
  for (nn::Parameter* p : output_.parameters()) out.push_back(p);
  return out;
}

std::vector<const nn::Parameter*> WeightEvaluator::parameters() const {
  std::vector<const nn::Parameter*> out;
  for (nn::Parameter* p : const_cast<WeightEvaluator*>(this)->parameters()) out.push_back(p);
  return out;
}

void WeightEvaluator::zero_grad() {
  for (nn::Parameter* p : parameters()) p->zero_grad();
}

}  // namespace ctxsfc
