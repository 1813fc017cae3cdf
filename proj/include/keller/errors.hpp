#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace keller {

/// Operands of incompatible dimension or shape.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input violates a hypothesis of the requested operation: a nonzero
/// gamma sum, a singular conjugating matrix, a map that is not Keller, ...
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configured size guard (dimension, degree, grid) was exceeded.
class LimitError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A postcondition that the library checks on its own output failed.
/// Seeing one of these means a bug, not bad input.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text input. `position` is a 0-based byte offset into the
/// parsed string.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at column " + std::to_string(position + 1)),
        detail_(message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

}  // namespace keller
