#pragma once

#include <stdexcept>
#include <string>

namespace gradetree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data does not satisfy its schema, or a file could not be read or
/// parsed. Messages name the offending file, row and column where known.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's precondition (unknown attribute,
/// empty dataset, bad configuration value).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace gradetree
