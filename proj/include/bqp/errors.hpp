#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bqp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when a Cholesky pivot falls below the positive-definiteness
/// threshold. `pivot()` is the zero-based index of the first failing pivot.
class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(std::ptrdiff_t pivot)
      : Error("matrix is not positive definite (pivot " +
              std::to_string(pivot) + ")"),
        pivot_(pivot) {}
  std::ptrdiff_t pivot() const { return pivot_; }

 private:
  std::ptrdiff_t pivot_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The multipliers lie outside the dual feasible cone, so the dual function
/// and its derivatives are undefined there.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class NotBoolean : public Error {
 public:
  explicit NotBoolean(std::vector<std::ptrdiff_t> indices)
      : Error(Describe(indices)), indices_(std::move(indices)) {}
  const std::vector<std::ptrdiff_t>& indices() const { return indices_; }

 private:
  static std::string Describe(const std::vector<std::ptrdiff_t>& indices) {
    std::string msg = "entries not within tolerance of +-1 at index";
    for (auto i : indices) msg += " " + std::to_string(i);
    return msg;
  }
  std::vector<std::ptrdiff_t> indices_;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

class NoFeasibleStart : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

}  // namespace bqp
