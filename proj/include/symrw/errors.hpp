#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symrw {

// Root of every error the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed term text. `position` is a byte offset into the input, or a
// 1-based line number when raised by line-oriented readers (see `line`).
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t position, std::size_t line = 0)
      : Error(what), position(position), line(line) {}
  std::size_t position;
  std::size_t line;
};

// More distinct variables than the canonical alphabet can name.
struct CapacityError : Error {
  using Error::Error;
};

struct NoMatch : Error {
  using Error::Error;
};

struct InvalidPosition : Error {
  using Error::Error;
};

struct NormalizeError : Error {
  using Error::Error;
};

struct NonConstantExponent : NormalizeError {
  using NormalizeError::NormalizeError;
};

struct NegativeExponent : NormalizeError {
  using NormalizeError::NormalizeError;
};

// Exponent fits no machine word we are willing to expand.
struct ExponentTooLarge : NormalizeError {
  using NormalizeError::NormalizeError;
};

// Symbol outside the polynomial language (named constant, unknown operator).
struct NonPolynomialSymbol : NormalizeError {
  using NormalizeError::NormalizeError;
};

struct UnboundVariable : Error {
  using Error::Error;
};

struct DepthExceeded : Error {
  using Error::Error;
};

struct Exhausted : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct AlignmentError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

}  // namespace symrw
