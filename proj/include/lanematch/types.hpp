// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lanematch {

using VertexId = std::uint32_t;
using LabelId = std::uint16_t;
using EdgeOffset = std::uint64_t;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

/// Binary file with a bad magic, unknown version or truncated payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Query graph rejected by validation (disconnected, too large, ...).
class QueryError : public Error {
 public:
  using Error::Error;
};

/// Initial pool or candidate buffers would exceed the configured memory cap.
class MemoryCapError : public Error {
 public:
  MemoryCapError(const std::string& what, std::size_t level, std::uint64_t pool_size)
      : Error(what), level_(level), pool_size_(pool_size) {}
  std::size_t level() const noexcept { return level_; }
  std::uint64_t pool_size() const noexcept { return pool_size_; }

 private:
  std::size_t level_;
  std::uint64_t pool_size_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The cooperative deadline passed before the phase finished.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

}  // namespace lanematch
