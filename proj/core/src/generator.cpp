#include "ctxsfc/networks.hpp"

#include <random>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

EdgeWeights batch_mean_weights(std::span<const EdgeWeights> weights) {
  if (weights.empty()) throw ContractError("batch mean of an empty weight list");
  EdgeWeights mean(weights[0].size(), 0.0);
  for (const EdgeWeights& w : weights) {
    if (w.size() != mean.size()) throw ContractError("weight vectors in a batch must have equal lengths");
    for (std::size_t i = 0; i < w.size(); ++i) mean[i] += w[i];
  }
  const double inv = 1.0 / static_cast<double>(weights.size());
  for (double& v : mean) v *= inv;
  return mean;
}

namespace {

void check_shape(const NetworkShape& shape) {
  if (shape.width < 1 || shape.residual_blocks < 0 || shape.gnn_blocks < 1) {
    throw ContractError("network needs width >= 1, residual blocks >= 0 and at least one GNN block");
  }
}

}  // namespace

WeightGenerator::WeightGenerator(const GridSize& size, const NetworkShape& shape, std::uint64_t seed)
    : size_(size), shape_(shape), dual_(size), adjacency_(nn::normalized_adjacency(LineGraph(dual_))) {
  check_shape(shape);
  act_.linear = shape.linear;
  std::mt19937_64 rng(seed);
  encoder_ = nn::LatticeEncoder(size, shape.width, shape.residual_blocks, rng, act_);
  for (int l = 0; l < shape.gnn_blocks; ++l) {
    const bool last = l + 1 == shape.gnn_blocks;
    gnn_.emplace_back("gnn" + std::to_string(l), shape.width, last ? 1 : shape.width, !last, rng);
  }
}

nn::Matrix WeightGenerator::forward(std::span<const Image> images, Tape* tape) const {
  for (const Image& img : images) {
    if (img.height() != size_.height() || img.width() != size_.width()) {
      throw ContractError("generator built for " + std::to_string(size_.height()) + "x" +
                          std::to_string(size_.width()) + " got a " + std::to_string(img.height()) + "x" +
                          std::to_string(img.width()) + " image");
    }
  }
  const int batch = static_cast<int>(images.size());
  nn::Matrix h = encoder_.forward(images, tape ? &tape->encoder : nullptr);
  nn::Matrix x = nn::pool_edge_features(h, batch, dual_);
  if (tape) {
    tape->batch = batch;
    tape->pooled = x;
    tape->gnn.resize(gnn_.size());
  }
  for (std::size_t l = 0; l < gnn_.size(); ++l) {
    x = gnn_[l].forward(adjacency_, x, batch, act_, tape ? &tape->gnn[l] : nullptr);
  }
  const auto m = static_cast<Eigen::Index>(dual_.edge_count());
  return Eigen::Map<const nn::Matrix>(x.data(), batch, m);
}

void WeightGenerator::backward(const Tape& tape, const nn::Matrix& grad_weights) {
  const auto m = static_cast<Eigen::Index>(dual_.edge_count());
  nn::Matrix grad = Eigen::Map<const nn::Matrix>(grad_weights.data(), tape.batch * m, 1);
  for (std::size_t l = gnn_.size(); l-- > 0;) {
    grad = gnn_[l].backward(adjacency_, tape.gnn[l], std::move(grad), tape.batch, act_, true);
  }
  encoder_.backward(tape.encoder, nn::pool_edge_features_backward(grad, tape.batch, dual_));
}

EdgeWeights WeightGenerator::generate(const Image& image) const {
  const nn::Matrix w = forward(std::span<const Image>(&image, 1), nullptr);
  return EdgeWeights(w.data(), w.data() + w.size());
}

std::vector<nn::Parameter*> WeightGenerator::parameters() {
  std::vector<nn::Parameter*> out = encoder_.parameters();
  for (auto& layer : gnn_) {
    for (nn::Parameter* p : layer.parameters()) out.push_back(p);
  }
  return out;
}

std::vector<const nn::Parameter*> WeightGenerator::parameters() const {
  std::vector<const nn::Parameter*> out;
  for (nn::Parameter* p : const_cast<WeightGenerator*>(this)->parameters()) out.push_back(p);
  return out;
}

void WeightGenerator::zero_grad() {
  for (nn::Parameter* p : parameters()) p->zero_grad();
}

}  // namespace ctxsfc
