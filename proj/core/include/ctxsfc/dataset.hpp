#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctxsfc/grid.hpp"
#include "ctxsfc/image.hpp"

namespace ctxsfc {

inline constexpr const char* kDataDirEnv = "CTXSFC_DATA_DIR";

enum class Split { train, test };

// source is an IDX image file or a directory of binary PGM files (read in
// lexicographic file-name order). IDX labels default to the sibling file with
// "images-idx3" replaced by "labels-idx1". A class filter requires labels.
struct DatasetSpec {
  std::filesystem::path source;
  std::optional<std::filesystem::path> labels;
  std::optional<int> class_filter;
  std::optional<int> pad_to;       // square target, even and >= source size
  std::optional<std::size_t> limit;  // keep the first n images after filtering
};

struct Dataset {
  ImageBatch images;
  std::vector<std::uint8_t> labels;  // empty for PGM directories
};

// $CTXSFC_DATA_DIR if set and non-empty, else the build-time default.
std::filesystem::path default_data_dir();

// <dir>/<name>/{train,t10k}-images-idx3-ubyte. Throws DataError if the
// directory does not exist.
DatasetSpec named_dataset(const std::filesystem::path& data_dir, const std::string& name, Split split);

Dataset load_dataset(const DatasetSpec& spec);

// Centers the image on a zero canvas. Throws ContractError if the target is
// smaller than the source in either dimension.
Image pad_image(const Image& image, const GridSize& target);
ImageBatch pad_images(const ImageBatch& batch, const GridSize& target);

// Central crop; for odd margins the extra row/column is dropped at the end.
Image center_crop(const Image& image, int height, int width);

}  // namespace ctxsfc
