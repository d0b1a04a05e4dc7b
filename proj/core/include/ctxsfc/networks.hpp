#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctxsfc/cover_merge.hpp"
#include "ctxsfc/layers.hpp"

namespace ctxsfc {

// Width d, residual block count m1 and message-passing block count m2 shared
// by both networks.
struct NetworkShape {
  int width = 32;
  int residual_blocks = 8;
  int gnn_blocks = 6;
  bool linear = false;  // disables every nonlinearity (gradient audits)

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

// Elementwise mean of per-image weight vectors. Throws ContractError on an
// empty list or unequal lengths.
EdgeWeights batch_mean_weights(std::span<const EdgeWeights> weights);

// Weight generator: lattice encoder -> edge pooling -> GCN blocks on the line
// graph, the last block mapping to one unbounded scalar per dual edge.
class WeightGenerator {
 public:
  struct Tape {
    int batch = 0;
    nn::EncoderTape encoder;
    nn::Matrix pooled;
    std::vector<nn::GcnTape> gnn;
  };

  WeightGenerator(const GridSize& size, const NetworkShape& shape, std::uint64_t seed);

  // One row of dual-edge weights per image.
  nn::Matrix forward(std::span<const Image> images, Tape* tape) const;
  // grad_weights has the layout returned by forward; accumulates parameter gradients.
  void backward(const Tape& tape, const nn::Matrix& grad_weights);

  EdgeWeights generate(const Image& image) const;

  const GridSize& size() const { return size_; }
  const NetworkShape& shape() const { return shape_; }
  const DualGraph& dual() const { return dual_; }
  std::vector<nn::Parameter*> parameters();
  std::vector<const nn::Parameter*> parameters() const;
  void zero_grad();

 private:
  GridSize size_;
  NetworkShape shape_;
  DualGraph dual_;
  nn::SparseMatrix adjacency_;
  nn::Activation act_;
  nn::LatticeEncoder encoder_;
  std::vector<nn::GcnLayer> gnn_;
};

// Weight evaluator: predicts the normalized objective of the scan order
// induced by batch-mean weights on an image. The weights are standardized to
// zero mean and unit variance over edges (the induced order is invariant to
// shifting and positive scaling), concatenated to the pooled image features,
// passed through GCN blocks, averaged over nodes, and mapped through a
// two-layer head with a sigmoid output.
class WeightEvaluator {
 public:
  struct ImageFeatures {
    int batch = 0;
    nn::Matrix pooled;  // batch * edges x width
    nn::EncoderTape tape;
  };

  struct HeadTape {
    int batch = 0;
    std::vector<double> standardized;
    double inv_scale = 1.0;
    nn::Matrix input;
    std::vector<nn::GcnTape> gnn;
    nn::Matrix node_mean;
    nn::Matrix hidden;
    nn::Matrix output;
  };

  WeightEvaluator(const GridSize& size, const NetworkShape& shape, std::uint64_t seed);

  ImageFeatures encode(std::span<const Image> images, bool keep_tape) const;
  std::vector<double> predict(const ImageFeatures& features, std::span<const double> wbar, HeadTape* tape) const;

  // Backpropagates d(output). Returns d(wbar). Parameter gradients of the head
  // accumulate only when `accumulate` is set; grad_pooled receives the
  // gradient for encoder_backward when non-null.
  std::vector<double> predict_backward(const HeadTape& tape, std::span<const double> grad_output, bool accumulate,
                                       nn::Matrix* grad_pooled);
  void encoder_backward(const ImageFeatures& features, const nn::Matrix& grad_pooled);

  double evaluate(std::span<const double> wbar, const Image& image) const;

  const GridSize& size() const { return size_; }
  const NetworkShape& shape() const { return shape_; }
  const DualGraph& dual() const { return dual_; }
  std::vector<nn::Parameter*> parameters();
  std::vector<const nn::Parameter*> parameters() const;
  void zero_grad();

 private:
  GridSize size_;
  NetworkShape shape_;
  DualGraph dual_;
  nn::SparseMatrix adjacency_;
  nn::Activation act_;
  nn::LatticeEncoder encoder_;
  std::vector<nn::GcnLayer> gnn_;
  nn::Linear hidden_;
  nn::Linear output_;
};

}  // namespace ctxsfc
