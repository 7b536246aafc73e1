#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poolex {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph, feature matrix or pair violates a structural invariant.
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Malformed dataset input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The pair generator could not satisfy its constraints.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// A pooling operator was misconfigured or could not reach its target size.
class PoolError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values showed up during a forward pass.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The distinguishability oracle refuses to run on the given input.
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace poolex
