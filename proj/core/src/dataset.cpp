#include "ctxsfc/dataset.hpp"

#include <algorithm>
#include <cstdlib>

#include "ctxsfc/error.hpp"
#include "ctxsfc/idx.hpp"
#include "ctxsfc/pgm.hpp"

#ifndef CTXSFC_DEFAULT_DATA_DIR
#define CTXSFC_DEFAULT_DATA_DIR "data"
#endif

namespace ctxsfc {

namespace fs = std::filesystem;

fs::path default_data_dir() {
  if (const char* env = std::getenv(kDataDirEnv); env != nullptr && *env != '\0') return env;
  return CTXSFC_DEFAULT_DATA_DIR;
}

DatasetSpec named_dataset(const fs::path& data_dir, const std::string& name, Split split) {
  const fs::path dir = data_dir / name;
  if (!fs::is_directory(dir)) throw DataError("dataset directory " + dir.string() + " not found");
  const std::string prefix = split == Split::train ? "train" : "t10k";
  DatasetSpec spec;
  spec.source = dir / (prefix + "-images-idx3-ubyte");
  spec.labels = dir / (prefix + "-labels-idx1-ubyte");
  return spec;
}

namespace {

std::optional<fs::path> sibling_labels(const fs::path& images) {
  std::string name = images.filename().string();
  const auto at = name.find("images-idx3");
  if (at == std::string::npos) return std::nullopt;
  name.replace(at, 11, "labels-idx1");
  fs::path p = images.parent_path() / name;
  if (!fs::exists(p)) return std::nullopt;
  return p;
}

ImageBatch load_pgm_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no .pgm files in " + dir.string());
  ImageBatch images;
  images.reserve(files.size());
  for (const auto& f : files) {
    images.push_back(load_pgm(f));
    if (images.back().height() != images.front().height() || images.back().width() != images.front().width()) {
      throw DataError(f.string() + ": size differs from " + files.front().string());
    }
  }
  return images;
}

}  // namespace

Dataset load_dataset(const DatasetSpec& spec) {
  if (!fs::exists(spec.source)) throw DataError("dataset source " + spec.source.string() + " not found");
  Dataset data;
  if (fs::is_directory(spec.source)) {
    data.images = load_pgm_directory(spec.source);
  } else {
    data.images = load_idx_images(spec.source);
    const auto labels = spec.labels ? spec.labels : sibling_labels(spec.source);
    if (labels) {
      data.labels = load_idx_labels(*labels);
      if (data.labels.size() != data.images.size()) {
        throw DataError("label count " + std::to_string(data.labels.size()) + " differs from image count " +
                        std::to_string(data.images.size()));
      }
    }
  }
  if (spec.class_filter) {
    if (data.labels.empty()) throw DataError("class filter needs labels, none found for " + spec.source.string());
    Dataset kept;
    for (std::size_t i = 0; i < data.images.size(); ++i) {
      if (data.labels[i] == *spec.class_filter) {
        kept.images.push_back(std::move(data.images[i]));
        kept.labels.push_back(data.labels[i]);
      }
    }
    data = std::move(kept);
  }
  if (spec.limit && data.images.size() > *spec.limit) {
    data.images.resize(*spec.limit);
    if (!data.labels.empty()) data.labels.resize(*spec.limit);
  }
  if (spec.pad_to) data.images = pad_images(data.images, GridSize(*spec.pad_to, *spec.pad_to));
  return data;
}

Image pad_image(const Image& image, const GridSize& target) {
  const int th = target.height();
  const int tw = target.width();
  if (th < image.height() || tw < image.width()) {
    throw ContractError("pad target " + std::to_string(th) + "x" + std::to_string(tw) + " is smaller than " +
                        std::to_string(image.height()) + "x" + std::to_string(image.width()));
  }
  const int top = (th - image.height()) / 2;
  const int left = (tw - image.width()) / 2;
  Image out(th, tw, 0.0);
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) out(r + top, c + left) = image(r, c);
  }
  return out;
}

ImageBatch pad_images(const ImageBatch& batch, const GridSize& target) {
  ImageBatch out;
  out.reserve(batch.size());
  for (const Image& image : batch) out.push_back(pad_image(image, target));
  return out;
}

Image center_crop(const Image& image, int height, int width) {
  if (height <= 0 || width <= 0 || height > image.height() || width > image.width()) {
    throw ContractError("crop " + std::to_string(height) + "x" + std::to_string(width) + " does not fit in " +
                        std::to_string(image.height()) + "x" + std::to_string(image.width()));
  }
  const int top = (image.height() - height) / 2;
  const int left = (image.width() - width) / 2;
  Image out(height, width);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) out(r, c) = image(r + top, c + left);
  }
  return out;
}

}  // namespace ctxsfc
