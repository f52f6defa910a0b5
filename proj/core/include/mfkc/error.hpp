#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfkc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: k = 0, non-positive limit, mismatched hash widths.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `offset()` is a byte offset or a 1-based line
/// number depending on the parser; the message says which.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Filesystem problems and malformed corpus files.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Inputs that are well-formed but cannot support the requested
/// computation (too few documents per label, zero RAE denominator, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace mfkc
