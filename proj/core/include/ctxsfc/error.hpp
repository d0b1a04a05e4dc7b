#pragma once

#include <stdexcept>
#include <string>

namespace ctxsfc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid dimensions that cannot be tiled by 2x2 circuits or exceed the pixel cap.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

// A well-formed size that a particular curve family cannot handle.
class UnsupportedSizeError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition: mismatched shapes, a non-tree,
// an order whose consecutive pixels are not adjacent.
class ContractError : public Error {
 public:
  using Error::Error;
};

// The objective has no value for this input (e.g. an all-zero sequence).
class UndefinedObjectiveError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable external data: IDX, PGM, curve and checkpoint files.
class DataError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class TrainingDivergedError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxsfc
