#include "ctxsfc/curve_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ctxsfc/error.hpp"

namespace ctxsfc {

namespace {

constexpr const char* kHeader = "ctxsfc-curve";
constexpr int kVersion = 1;

bool is_word(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

bool exempt_from_adjacency(const std::string& kind) { return kind == "raster"; }

void write_curve(std::ostream& out, const CurveFile& curve) {
  if (!is_word(curve.kind)) throw ContractError("curve kind must be a single word");
  if (curve.objective && !is_word(*curve.objective)) throw ContractError("curve objective must be a single word");
  if (curve.source && curve.source->find('\n') != std::string::npos) {
    throw ContractError("curve source must fit on one line");
  }
  validate_order(curve.order, !exempt_from_adjacency(curve.kind));
  out << kHeader << ' ' << kVersion << '\n';
  out << "kind " << curve.kind << '\n';
  out << "height " << curve.order.size.height() << '\n';
  out << "width " << curve.order.size.width() << '\n';
  if (curve.objective) out << "objective " << *curve.objective << '\n';
  if (curve.seed) out << "seed " << *curve.seed << '\n';
  if (curve.source) out << "source " << *curve.source << '\n';
  out << "order\n";
  const int w = curve.order.size.width();
  for (std::size_t i = 0; i < curve.order.pixels.size(); ++i) {
    out << curve.order.pixels[i] << ((i + 1) % static_cast<std::size_t>(w) == 0 ? '\n' : ' ');
  }
  if (!out) throw DataError("failed to write curve file");
}

void save_curve(const std::filesystem::path& path, const CurveFile& curve) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_curve(out, curve);
}

CurveFile read_curve(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> DataError {
    return DataError("curve file line " + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) throw DataError("empty curve file");
  ++line_no;
  {
    std::istringstream head(line);
    std::string magic;
    int version = 0;
    if (!(head >> magic >> version) || magic != kHeader) throw fail("missing '" + std::string(kHeader) + "' header");
    if (version != kVersion) throw fail("unsupported version " + std::to_string(version));
  }
  std::string kind;
  long height = -1;
  long width = -1;
  std::optional<std::string> objective;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> source;
  bool saw_order = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "order") {
      saw_order = true;
      break;
    }
    if (key == "kind") {
      fields >> kind;
    } else if (key == "height") {
      if (!(fields >> height)) throw fail("bad height");
    } else if (key == "width") {
      if (!(fields >> width)) throw fail("bad width");
    } else if (key == "objective") {
      std::string v;
      if (!(fields >> v)) throw fail("bad objective");
      objective = v;
    } else if (key == "seed") {
      std::uint64_t v = 0;
      if (!(fields >> v)) throw fail("bad seed");
      seed = v;
    } else if (key == "source") {
      source = line.size() > 7 ? line.substr(7) : std::string();
    } else {
      throw fail("unknown key '" + key + "'");
    }
  }
  if (!saw_order) throw DataError("curve file has no 'order' section");
  if (kind.empty()) throw DataError("curve file has no kind");
  if (height <= 0 || width <= 0) throw DataError("curve file needs positive height and width");
  std::optional<GridSize> size;
  try {
    size.emplace(static_cast<int>(height), static_cast<int>(width));
  } catch (const Error& e) {
    throw DataError(std::string("curve file size: ") + e.what());
  }
  SfcOrder order{*size, {}};
  order.pixels.reserve(size->pixel_count());
  long long v = 0;
  while (in >> v) {
    if (v < 0 || static_cast<std::size_t>(v) >= size->pixel_count()) {
      throw DataError("curve file pixel index " + std::to_string(v) + " out of range");
    }
    order.pixels.push_back(static_cast<PixelId>(v));
  }
  if (!in.eof()) throw DataError("curve file order contains a non-integer token");
  try {
    validate_order(order, !exempt_from_adjacency(kind));
  } catch (const ContractError& e) {
    throw DataError(std::string("curve file order invalid: ") + e.what());
  }
  return {kind, std::move(order), objective, seed, source};
}

CurveFile load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open curve file " + path.string());
  try {
    return read_curve(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace ctxsfc
