#include "ctxsfc/benchmark_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ctxsfc/cover_merge.hpp"
#include "ctxsfc/error.hpp"
#include "ctxsfc/objectives.hpp"

namespace ctxsfc {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  workers.clear();
  if (error) std::rethrow_exception(error);
}

namespace {

struct ImageScore {
  std::vector<double> rho;  // NaN when undefined
  double lzw = 0.0;
};

}  // namespace

BenchmarkTable benchmark(std::span<const Image> images, std::span<const BenchmarkOrder> orders,
                         std::span<const int> lags, bool with_lzw, unsigned threads) {
  if (images.empty()) throw ContractError("benchmark needs at least one image");
  const GridSize size(images.front().height(), images.front().width());
  for (const Image& image : images) {
    if (image.height() != size.height() || image.width() != size.width()) {
      throw ContractError("benchmark images must share one size");
    }
  }
  for (const BenchmarkOrder& o : orders) {
    if (!o.per_image_dafner && (!o.order || !(o.order->size == size))) {
      throw ContractError("order '" + o.name + "' does not match the image size");
    }
  }
  const DualGraph dual(size);
  BenchmarkTable table;
  table.lags.assign(lags.begin(), lags.end());
  for (const BenchmarkOrder& o : orders) {
    std::vector<ImageScore> scores(images.size());
    parallel_for(images.size(), threads, [&](std::size_t i) {
      const SfcOrder order = o.per_image_dafner ? sfc_from_weights(dual, dafner_weights(images[i], dual)) : *o.order;
      const auto seq = flatten(images[i], order);
      ImageScore& s = scores[i];
      for (int k : lags) {
        try {
          s.rho.push_back(autocorrelation(seq, k));
        } catch (const UndefinedObjectiveError&) {
          s.rho.push_back(std::nan(""));
        }
      }
      if (with_lzw) s.lzw = static_cast<double>(lzw_length(seq));
    });
    BenchmarkRow row;
    row.order = o.name;
    row.images = images.size();
    row.mean_rho.assign(lags.size(), 0.0);
    double lzw = 0.0;
    for (const ImageScore& s : scores) {
      if (!s.rho.empty() && std::isnan(s.rho.front())) {
        ++row.undefined;
      } else {
        for (std::size_t j = 0; j < s.rho.size(); ++j) row.mean_rho[j] += s.rho[j];
      }
      lzw += s.lzw;
    }
    const std::size_t defined = row.images - row.undefined;
    for (double& v : row.mean_rho) v = defined ? v / static_cast<double>(defined) : std::nan("");
    if (with_lzw) row.mean_lzw_bytes = lzw / static_cast<double>(row.images);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string BenchmarkTable::to_csv() const {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  const bool lzw = !rows.empty() && rows.front().mean_lzw_bytes.has_value();
  out << "order,images,undefined";
  for (int k : lags) out << ",rho_" << k;
  if (lzw) out << ",lzw_bytes";
  out << '\n';
  for (const BenchmarkRow& r : rows) {
    out << r.order << ',' << r.images << ',' << r.undefined;
    for (double v : r.mean_rho) out << ',' << v;
    if (lzw) out << ',' << r.mean_lzw_bytes.value_or(std::nan(""));
    out << '\n';
  }
  return out.str();
}

}  // namespace ctxsfc
