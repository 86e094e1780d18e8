#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mscr {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid (n,k,d,t) combination or a modulus that cannot support the code.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// Field-level failure (zero inversion, no admissible point set, ...).
class FieldError : public Error {
 public:
  using Error::Error;
};

/// Linear-algebra failure: singular system. Carries the index of the first
/// row found to be dependent on the rows above it.
class RankError : public Error {
 public:
  RankError(const std::string& what, std::size_t row) : Error(what), row_(row) {}
  std::size_t dependent_row() const { return row_; }

 private:
  std::size_t row_;
};

/// Shape or argument mismatch in matrix operations.
class LinalgError : public Error {
 public:
  using Error::Error;
};

/// Encode/decode/repair contract violation (bad shard set, header mismatch,
/// checksum failure, ...).
class CodecError : public Error {
 public:
  using Error::Error;
};

/// File I/O or on-disk format failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mscr
