#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctxsfc/image.hpp"
#include "ctxsfc/order.hpp"

namespace ctxsfc {

// A scan order to score. per_image_dafner rebuilds the order from each
// image's own Dafner weights; otherwise `order` is used for every image.
struct BenchmarkOrder {
  std::string name;
  std::optional<SfcOrder> order;
  bool per_image_dafner = false;

  static BenchmarkOrder fixed(std::string name, SfcOrder order) { return {std::move(name), std::move(order), false}; }
  static BenchmarkOrder dafner() { return {"dafner", std::nullopt, true}; }
};

struct BenchmarkRow {
  std::string order;
  std::size_t images = 0;
  std::size_t undefined = 0;      // all-zero images, left out of the rho means
  std::vector<double> mean_rho;   // one per lag
  std::optional<double> mean_lzw_bytes;
};

struct BenchmarkTable {
  std::vector<int> lags;
  std::vector<BenchmarkRow> rows;

  // Columns: order,images,undefined,rho_<k>...[,lzw_bytes]
  std::string to_csv() const;
};

// Per-image scoring fans out over `threads` workers (0 = hardware
// concurrency); results are reduced in image order so the table does not
// depend on the thread count.
BenchmarkTable benchmark(std::span<const Image> images, std::span<const BenchmarkOrder> orders,
                         std::span<const int> lags, bool with_lzw, unsigned threads = 1);

// Runs fn(i) for i in [0, n) across up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace ctxsfc
