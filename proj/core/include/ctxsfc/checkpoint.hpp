#pragma once

#include <filesystem>
#include <iosfwd>

#include "ctxsfc/networks.hpp"

namespace ctxsfc {

// Binary checkpoint of both networks. All integers are little-endian u32,
// all reals little-endian IEEE-754 binary64.
//
//   magic      8 bytes  "CSFCCKPT"
//   version    u32      1
//   height     u32      image rows
//   width      u32      image columns
//   d          u32      feature width
//   m1         u32      residual blocks
//   m2         u32      message-passing blocks
//   linear     u32      1 if nonlinearities are disabled
//   sections   u32      2
//   per section:
//     tag      u32 length + bytes ("generator" | "evaluator")
//     tensors  u32
//     per tensor:
//       name   u32 length + bytes
//       rows   u32
//       cols   u32
//       data   rows * cols binary64, row-major
struct Checkpoint {
  WeightGenerator generator;
  WeightEvaluator evaluator;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(std::ostream& out, const WeightGenerator& generator, const WeightEvaluator& evaluator);
void save_checkpoint(const std::filesystem::path& path, const WeightGenerator& generator,
                     const WeightEvaluator& evaluator);

// Throws DataError on a bad magic, unsupported version, truncation or a
// tensor that does not match the declared architecture.
Checkpoint read_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace ctxsfc
