#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ctxsfc/grid.hpp"
#include "ctxsfc/image.hpp"

// Building blocks for the weight generator and evaluator. Activations for a
// batch are stacked row-wise: row (b * positions + i) holds the feature vector
// of position i in batch item b.
namespace ctxsfc::nn {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::RowVectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;
  Matrix velocity;  // momentum buffer

  Parameter() = default;
  Parameter(std::string n, Eigen::Index rows, Eigen::Index cols);
  void zero_grad() { grad.setZero(); }
};

// Rectifier, or identity when the network runs with nonlinearities disabled.
struct Activation {
  bool linear = false;
  void apply(Matrix& x) const;
  // dx *= act'(out), using the activation output.
  void backprop(const Matrix& out, Matrix& dx) const;
};

void he_init(Parameter& p, int fan_in, std::mt19937_64& rng, double scale = 1.0);

// 2x2 stride-2 convolution from the single-channel image onto the circuit
// lattice: each circuit's four pixels map to one feature vector.
class CircuitConv {
 public:
  CircuitConv() = default;
  CircuitConv(int out_channels, std::mt19937_64& rng);

  // Returns pre-activations; caches the gathered pixel blocks for backward.
  Matrix forward(std::span<const Image> images, Matrix* gathered) const;
  void backward(const Matrix& gathered, const Matrix& grad_out);

  std::vector<Parameter*> parameters() { return {&weight_, &bias_}; }

 private:
  Parameter weight_;  // 4 x out
  Parameter bias_;    // 1 x out
};

// 3x3 "same" convolution on the circuit lattice.
class LatticeConv {
 public:
  LatticeConv() = default;
  LatticeConv(std::string name, int channels, std::mt19937_64& rng, double init_scale);

  Matrix forward(const Matrix& x, int rows, int cols, Matrix* columns) const;
  // Returns the gradient with respect to the input.
  Matrix backward(const Matrix& columns, const Matrix& grad_out, int rows, int cols);

  std::vector<Parameter*> parameters() { return {&weight_, &bias_}; }

 private:
  Parameter weight_;  // 9*channels x channels
  Parameter bias_;
};

Matrix im2col3x3(const Matrix& x, int rows, int cols);
Matrix col2im3x3(const Matrix& columns, int rows, int cols, int channels);

// Circuit-lattice encoder: circuit conv + activation, then residual blocks
// h <- h + conv3x3(act(h)).
struct EncoderTape {
  int batch = 0;
  Matrix gathered;
  Matrix stem_out;
  std::vector<Matrix> block_inputs;
  std::vector<Matrix> block_columns;
};

class LatticeEncoder {
 public:
  LatticeEncoder() = default;
  LatticeEncoder(const GridSize& size, int width, int residual_blocks, std::mt19937_64& rng, Activation act);

  Matrix forward(std::span<const Image> images, EncoderTape* tape) const;
  void backward(const EncoderTape& tape, Matrix grad_out);

  std::vector<Parameter*> parameters();

 private:
  int rows_ = 0;
  int cols_ = 0;
  Activation act_;
  CircuitConv stem_;
  std::vector<LatticeConv> blocks_;
};

// Mean of the two circuit features at the ends of each dual edge, in canonical
// edge order (the 1x2 pool gives horizontal edges, the 2x1 pool vertical ones).
Matrix pool_edge_features(const Matrix& vertex_features, int batch, const DualGraph& dual);
Matrix pool_edge_features_backward(const Matrix& grad_edges, int batch, const DualGraph& dual);

// D^-1/2 (A + I) D^-1/2 for the line graph adjacency A.
SparseMatrix normalized_adjacency(const LineGraph& line);

// Applies the same sparse operator to each batch block.
Matrix propagate(const SparseMatrix& op, const Matrix& x, int batch);

// h' = act(A_hat h Theta + b).
struct GcnTape {
  Matrix propagated;
  Matrix output;
};

class GcnLayer {
 public:
  GcnLayer() = default;
  GcnLayer(std::string name, int in, int out, bool activated, std::mt19937_64& rng, double init_scale = 1.0);

  Matrix forward(const SparseMatrix& adjacency, const Matrix& x, int batch, const Activation& act,
                 GcnTape* tape) const;
  Matrix backward(const SparseMatrix& adjacency, const GcnTape& tape, Matrix grad_out, int batch,
                  const Activation& act, bool accumulate);

  int in_features() const { return static_cast<int>(weight_.value.rows()); }
  int out_features() const { return static_cast<int>(weight_.value.cols()); }
  std::vector<Parameter*> parameters() { return {&weight_, &bias_}; }

 private:
  Parameter weight_;
  Parameter bias_;
  bool activated_ = true;
};

class Linear {
 public:
  Linear() = default;
  Linear(std::string name, int in, int out, std::mt19937_64& rng, double init_scale = 1.0);

  Matrix forward(const Matrix& x) const;
  Matrix backward(const Matrix& x, const Matrix& grad_out, bool accumulate);

  std::vector<Parameter*> parameters() { return {&weight_, &bias_}; }

 private:
  Parameter weight_;
  Parameter bias_;
};

// Momentum SGD with an optional global gradient-norm clip.
struct SgdMomentum {
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double clip_norm = 0.0;  // 0 disables clipping

  void step(const std::vector<Parameter*>& params) const;
};

double gradient_norm(const std::vector<Parameter*>& params);
std::size_t parameter_count(const std::vector<Parameter*>& params);

}  // namespace ctxsfc::nn
