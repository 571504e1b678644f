#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geogap {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched dimensions between tensors, vectors or charts.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A point (or a finite-difference stencil, or an integrated trajectory)
/// left the open coordinate domain of a chart.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Expression-text syntax error; `offset` is the byte position in the source.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

/// Numeric domain error while evaluating an expression (log of a nonpositive
/// value, sqrt of a negative, division by zero, non-finite result).
class EvalError : public Error {
public:
  EvalError(const std::string& msg, std::size_t offset)
      : Error(msg + " (subexpression at byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

/// Singular matrix where an invertible one is required (metric, frame).
class SingularError : public Error {
public:
  using Error::Error;
};

/// Extrapolation failure: too few samples, repeated s values, ill-conditioned
/// normal equations, or a tripped reconstruction guard.
class FitError : public Error {
public:
  using Error::Error;
};

/// Invalid run configuration (unknown geometry, bad parameters, bad flags).
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace geogap
