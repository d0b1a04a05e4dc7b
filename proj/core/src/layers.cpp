#include "ctxsfc/layers.hpp"

#include <cmath>
#include <cstring>

#include "ctxsfc/error.hpp"

namespace ctxsfc::nn {

Parameter::Parameter(std::string n, Eigen::Index rows, Eigen::Index cols)
    : name(std::move(n)),
      value(Matrix::Zero(rows, cols)),
      grad(Matrix::Zero(rows, cols)),
      velocity(Matrix::Zero(rows, cols)) {}

void Activation::apply(Matrix& x) const {
  if (!linear) x = x.cwiseMax(0.0);
}

void Activation::backprop(const Matrix& out, Matrix& dx) const {
  if (!linear) dx = (out.array() > 0.0).select(dx, 0.0);
}

void he_init(Parameter& p, int fan_in, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale * std::sqrt(2.0 / std::max(fan_in, 1)));
  for (Eigen::Index i = 0; i < p.value.size(); ++i) p.value.data()[i] = normal(rng);
}

CircuitConv::CircuitConv(int out_channels, std::mt19937_64& rng)
    : weight_("stem.weight", 4, out_channels), bias_("stem.bias", 1, out_channels) {
  he_init(weight_, 4, rng);
}

Matrix CircuitConv::forward(std::span<const Image> images, Matrix* gathered) const {
  const int rows = images.empty() ? 0 : images[0].height() / 2;
  const int cols = images.empty() ? 0 : images[0].width() / 2;
  const Eigen::Index per = static_cast<Eigen::Index>(rows) * cols;
  Matrix g(static_cast<Eigen::Index>(images.size()) * per, 4);
  for (std::size_t b = 0; b < images.size(); ++b) {
    const Image& img = images[b];
    if (img.height() != 2 * rows || img.width() != 2 * cols) throw ContractError("images in a batch must share a size");
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const Eigen::Index r = static_cast<Eigen::Index>(b) * per + i * cols + j;
        g(r, 0) = img(2 * i, 2 * j);
        g(r, 1) = img(2 * i, 2 * j + 1);
        g(r, 2) = img(2 * i + 1, 2 * j);
        g(r, 3) = img(2 * i + 1, 2 * j + 1);
      }
    }
  }
  Matrix out = g * weight_.value;
  out.rowwise() += bias_.value.row(0);
  if (gathered) *gathered = std::move(g);
  return out;
}

void CircuitConv::backward(const Matrix& gathered, const Matrix& grad_out) {
  weight_.grad.noalias() += gathered.transpose() * grad_out;
  bias_.grad += grad_out.colwise().sum();
}

LatticeConv::LatticeConv(std::string name, int channels, std::mt19937_64& rng, double init_scale)
    : weight_(name + ".weight", 9 * channels, channels), bias_(name + ".bias", 1, channels) {
  he_init(weight_, 9 * channels, rng, init_scale);
}

Matrix im2col3x3(const Matrix& x, int rows, int cols) {
  const Eigen::Index c = x.cols();
  const Eigen::Index per = static_cast<Eigen::Index>(rows) * cols;
  const Eigen::Index batch = per == 0 ? 0 : x.rows() / per;
  Matrix out(x.rows(), 9 * c);
  const std::size_t bytes = static_cast<std::size_t>(c) * sizeof(double);
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        double* dst = out.data() + (b * per + i * cols + j) * 9 * c;
        for (int ky = 0; ky < 3; ++ky) {
          const int y = i + ky - 1;
          for (int kx = 0; kx < 3; ++kx, dst += c) {
            const int xx = j + kx - 1;
            if (y < 0 || y >= rows || xx < 0 || xx >= cols) {
              std::memset(dst, 0, bytes);
            } else {
              std::memcpy(dst, x.data() + (b * per + y * cols + xx) * c, bytes);
            }
          }
        }
      }
    }
  }
  return out;
}

Matrix col2im3x3(const Matrix& columns, int rows, int cols, int channels) {
  const Eigen::Index c = channels;
  const Eigen::Index per = static_cast<Eigen::Index>(rows) * cols;
  const Eigen::Index batch = per == 0 ? 0 : columns.rows() / per;
  Matrix out = Matrix::Zero(columns.rows(), c);
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        const double* src = columns.data() + (b * per + i * cols + j) * 9 * c;
        for (int ky = 0; ky < 3; ++ky) {
          const int y = i + ky - 1;
          for (int kx = 0; kx < 3; ++kx, src += c) {
            const int xx = j + kx - 1;
            if (y < 0 || y >= rows || xx < 0 || xx >= cols) continue;
            double* dst = out.data() + (b * per + y * cols + xx) * c;
            for (Eigen::Index k = 0; k < c; ++k) dst[k] += src[k];
          }
        }
      }
    }
  }
  return out;
}

Matrix LatticeConv::forward(const Matrix& x, int rows, int cols, Matrix* columns) const {
  Matrix col = im2col3x3(x, rows, cols);
  Matrix out = col * weight_.value;
  out.rowwise() += bias_.value.row(0);
  if (columns) *columns = std::move(col);
  return out;
}

Matrix LatticeConv::backward(const Matrix& columns, const Matrix& grad_out, int rows, int cols) {
  weight_.grad.noalias() += columns.transpose() * grad_out;
  bias_.grad += grad_out.colwise().sum();
  const Matrix dcol = grad_out * weight_.value.transpose();
  return col2im3x3(dcol, rows, cols, static_cast<int>(weight_.value.cols()));
}

LatticeEncoder::LatticeEncoder(const GridSize& size, int width, int residual_blocks, std::mt19937_64& rng,
                               Activation act)
    : rows_(size.circuit_rows()), cols_(size.circuit_cols()), act_(act), stem_(width, rng) {
  // Residual branches start small so the trunk stays well scaled at depth.
  const double branch_scale = 1.0 / std::sqrt(static_cast<double>(std::max(residual_blocks, 1)));
  for (int l = 0; l < residual_blocks; ++l) {
    blocks_.emplace_back("res" + std::to_string(l), width, rng, branch_scale);
  }
}

Matrix LatticeEncoder::forward(std::span<const Image> images, EncoderTape* tape) const {
  Matrix gathered;
  Matrix h = stem_.forward(images, tape ? &gathered : nullptr);
  act_.apply(h);
  if (tape) {
    tape->batch = static_cast<int>(images.size());
    tape->gathered = std::move(gathered);
    tape->stem_out = h;
    tape->block_inputs.resize(blocks_.size());
    tape->block_columns.resize(blocks_.size());
  }
  for (std::size_t l = 0; l < blocks_.size(); ++l) {
    Matrix r = h;
    act_.apply(r);
    Matrix z = blocks_[l].forward(r, rows_, cols_, tape ? &tape->block_columns[l] : nullptr);
    if (tape) tape->block_inputs[l] = h;
    h += z;
  }
  return h;
}

void LatticeEncoder::backward(const EncoderTape& tape, Matrix grad) {
  for (std::size_t l = blocks_.size(); l-- > 0;) {
    Matrix dr = blocks_[l].backward(tape.block_columns[l], grad, rows_, cols_);
    act_.backprop(tape.block_inputs[l], dr);
    grad += dr;
  }
  act_.backprop(tape.stem_out, grad);
  stem_.backward(tape.gathered, grad);
}

std::vector<Parameter*> LatticeEncoder::parameters() {
  std::vector<Parameter*> out = stem_.parameters();
  for (auto& b : blocks_) {
    for (Parameter* p : b.parameters()) out.push_back(p);
  }
  return out;
}

Matrix pool_edge_features(const Matrix& vertex_features, int batch, const DualGraph& dual) {
  const auto nv = static_cast<Eigen::Index>(dual.vertex_count());
  const auto m = static_cast<Eigen::Index>(dual.edge_count());
  if (vertex_features.rows() != batch * nv) throw ContractError("vertex feature rows do not match the dual graph");
  Matrix out(batch * m, vertex_features.cols());
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (Eigen::Index e = 0; e < m; ++e) {
      const DualEdge& edge = dual.edge(static_cast<DualEdgeId>(e));
      out.row(b * m + e) = 0.5 * (vertex_features.row(b * nv + edge.a) + vertex_features.row(b * nv + edge.b));
    }
  }
  return out;
}

Matrix pool_edge_features_backward(const Matrix& grad_edges, int batch, const DualGraph& dual) {
  const auto nv = static_cast<Eigen::Index>(dual.vertex_count());
  const auto m = static_cast<Eigen::Index>(dual.edge_count());
  Matrix out = Matrix::Zero(batch * nv, grad_edges.cols());
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (Eigen::Index e = 0; e < m; ++e) {
      const DualEdge& edge = dual.edge(static_cast<DualEdgeId>(e));
      out.row(b * nv + edge.a) += 0.5 * grad_edges.row(b * m + e);
      out.row(b * nv + edge.b) += 0.5 * grad_edges.row(b * m + e);
    }
  }
  return out;
}

SparseMatrix normalized_adjacency(const LineGraph& line) {
  const auto n = static_cast<Eigen::Index>(line.node_count());
  std::vector<double> inv_sqrt_deg(static_cast<std::size_t>(n));
  for (std::uint32_t i = 0; i < n; ++i) {
    inv_sqrt_deg[i] = 1.0 / std::sqrt(1.0 + static_cast<double>(line.neighbors(i).size()));
  }
  std::vector<Eigen::Triplet<double>> entries;
  for (std::uint32_t i = 0; i < n; ++i) {
    entries.emplace_back(i, i, inv_sqrt_deg[i] * inv_sqrt_deg[i]);
    for (std::uint32_t j : line.neighbors(i)) entries.emplace_back(i, j, inv_sqrt_deg[i] * inv_sqrt_deg[j]);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

Matrix propagate(const SparseMatrix& op, const Matrix& x, int batch) {
  const Eigen::Index n = op.rows();
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < batch; ++b) {
    out.middleRows(b * n, n).noalias() = op * x.middleRows(b * n, n);
  }
  return out;
}

GcnLayer::GcnLayer(std::string name, int in, int out, bool activated, std::mt19937_64& rng, double init_scale)
    : weight_(name + ".weight", in, out), bias_(name + ".bias", 1, out), activated_(activated) {
  he_init(weight_, in, rng, init_scale);
}

Matrix GcnLayer::forward(const SparseMatrix& adjacency, const Matrix& x, int batch, const Activation& act,
                         GcnTape* tape) const {
  Matrix s = propagate(adjacency, x, batch);
  Matrix out = s * weight_.value;
  out.rowwise() += bias_.value.row(0);
  if (activated_) act.apply(out);
  if (tape) {
    tape->propagated = std::move(s);
    tape->output = out;
  }
  return out;
}

Matrix GcnLayer::backward(const SparseMatrix& adjacency, const GcnTape& tape, Matrix grad, int batch,
                          const Activation& act, bool accumulate) {
  if (activated_) act.backprop(tape.output, grad);
  if (accumulate) {
    weight_.grad.noalias() += tape.propagated.transpose() * grad;
    bias_.grad += grad.colwise().sum();
  }
  const Matrix ds = grad * weight_.value.transpose();
  return propagate(adjacency, ds, batch);  // the normalized adjacency is symmetric
}

Linear::Linear(std::string name, int in, int out, std::mt19937_64& rng, double init_scale)
    : weight_(name + ".weight", in, out), bias_(name + ".bias", 1, out) {
  he_init(weight_, in, rng, init_scale);
}

Matrix Linear::forward(const Matrix& x) const {
  Matrix out = x * weight_.value;
  out.rowwise() += bias_.value.row(0);
  return out;
}

Matrix Linear::backward(const Matrix& x, const Matrix& grad_out, bool accumulate) {
  if (accumulate) {
    weight_.grad.noalias() += x.transpose() * grad_out;
    bias_.grad += grad_out.colwise().sum();
  }
  return grad_out * weight_.value.transpose();
}

double gradient_norm(const std::vector<Parameter*>& params) {
  double sq = 0.0;
  for (const Parameter* p : params) sq += p->grad.squaredNorm();
  return std::sqrt(sq);
}

std::size_t parameter_count(const std::vector<Parameter*>& params) {
  std::size_t n = 0;
  for (const Parameter* p : params) n += static_cast<std::size_t>(p->value.size());
  return n;
}

void SgdMomentum::step(const std::vector<Parameter*>& params) const {
  double scale = 1.0;
  if (clip_norm > 0.0) {
    const double norm = gradient_norm(params);
    if (norm > clip_norm) scale = clip_norm / norm;
  }
  for (Parameter* p : params) {
    p->velocity = momentum * p->velocity + scale * p->grad;
    p->value -= learning_rate * p->velocity;
  }
}

}  // namespace ctxsfc::nn
