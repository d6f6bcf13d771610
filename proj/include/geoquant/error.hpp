#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace geoquant {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is a 0-based byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operands live in different spaces: dimension, phase-space tag or operator variable set.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (non-affine substitution, momentum degree too high, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: solver residual, support overflow, non-finite values.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace geoquant
