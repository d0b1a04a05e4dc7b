#include "ctxsfc/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

namespace {

constexpr std::array<char, 8> kMagic = {'C', 'S', 'F', 'C', 'C', 'K', 'P', 'T'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(b.data(), 8);
}

void put_string(std::ostream& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw DataError("checkpoint truncated at byte offset " + std::to_string(offset_ + in_.gcount()));
    }
    offset_ += n;
  }
  std::uint32_t u32() {
    std::array<unsigned char, 4> b{};
    bytes(reinterpret_cast<char*>(b.data()), 4);
    return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }
  double f64() {
    std::array<unsigned char, 8> b{};
    bytes(reinterpret_cast<char*>(b.data()), 8);
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[static_cast<std::size_t>(i)];
    return std::bit_cast<double>(bits);
  }
  std::string string() {
    const std::uint32_t n = u32();
    if (n > 4096) throw DataError("checkpoint string length " + std::to_string(n) + " is implausible");
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }
  std::size_t offset() const { return offset_; }

 private:
  std::istream& in_;
  std::size_t offset_ = 0;
};

void write_section(std::ostream& out, const std::string& tag, const std::vector<const nn::Parameter*>& params) {
  put_string(out, tag);
  put_u32(out, static_cast<std::uint32_t>(params.size()));
  for (const nn::Parameter* p : params) {
    put_string(out, p->name);
    put_u32(out, static_cast<std::uint32_t>(p->value.rows()));
    put_u32(out, static_cast<std::uint32_t>(p->value.cols()));
    for (Eigen::Index i = 0; i < p->value.size(); ++i) put_f64(out, p->value.data()[i]);
  }
}

void read_section(Reader& in, const std::string& expected_tag, const std::vector<nn::Parameter*>& params) {
  const std::string tag = in.string();
  if (tag != expected_tag) throw DataError("expected checkpoint section '" + expected_tag + "', found '" + tag + "'");
  const std::uint32_t count = in.u32();
  if (count != params.size()) {
    throw DataError("section '" + tag + "' holds " + std::to_string(count) + " tensors, the architecture has " +
                    std::to_string(params.size()));
  }
  for (nn::Parameter* p : params) {
    const std::string name = in.string();
    const std::uint32_t rows = in.u32();
    const std::uint32_t cols = in.u32();
    if (name != p->name || rows != p->value.rows() || cols != p->value.cols()) {
      throw DataError("tensor '" + name + "' (" + std::to_string(rows) + "x" + std::to_string(cols) +
                      ") does not match '" + p->name + "' at byte offset " + std::to_string(in.offset()));
    }
    for (Eigen::Index i = 0; i < p->value.size(); ++i) p->value.data()[i] = in.f64();
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const WeightGenerator& generator, const WeightEvaluator& evaluator) {
  if (!(generator.size() == evaluator.size()) || !(generator.shape() == evaluator.shape())) {
    throw ContractError("generator and evaluator architectures differ");
  }
  const NetworkShape& shape = generator.shape();
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kCheckpointVersion);
  put_u32(out, static_cast<std::uint32_t>(generator.size().height()));
  put_u32(out, static_cast<std::uint32_t>(generator.size().width()));
  put_u32(out, static_cast<std::uint32_t>(shape.width));
  put_u32(out, static_cast<std::uint32_t>(shape.residual_blocks));
  put_u32(out, static_cast<std::uint32_t>(shape.gnn_blocks));
  put_u32(out, shape.linear ? 1u : 0u);
  put_u32(out, 2);
  write_section(out, "generator", generator.parameters());
  write_section(out, "evaluator", evaluator.parameters());
  if (!out) throw DataError("failed to write checkpoint");
}

void save_checkpoint(const std::filesystem::path& path, const WeightGenerator& generator,
                     const WeightEvaluator& evaluator) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, generator, evaluator);
}

Checkpoint read_checkpoint(std::istream& in) {
  Reader r(in);
  std::array<char, 8> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kMagic) throw DataError("not a checkpoint file (bad magic)");
  const std::uint32_t version = r.u32();
  if (version != kCheckpointVersion) throw DataError("unsupported checkpoint version " + std::to_string(version));
  const auto height = static_cast<int>(r.u32());
  const auto width = static_cast<int>(r.u32());
  NetworkShape shape;
  shape.width = static_cast<int>(r.u32());
  shape.residual_blocks = static_cast<int>(r.u32());
  shape.gnn_blocks = static_cast<int>(r.u32());
  shape.linear = r.u32() != 0;
  if (r.u32() != 2) throw DataError("checkpoint must hold exactly two sections");
  GridSize size = [&] {
    try {
      return GridSize(height, width);
    } catch (const InvalidSizeError& e) {
      throw DataError(std::string("checkpoint grid size: ") + e.what());
    }
  }();
  Checkpoint ckpt{WeightGenerator(size, shape, 0), WeightEvaluator(size, shape, 0)};
  read_section(r, "generator", ckpt.generator.parameters());
  read_section(r, "evaluator", ckpt.evaluator.parameters());
  return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace ctxsfc
