#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace goldman {

/// Malformed text input (words, surface files, map files, linear combinations).
/// Line and column are 1-based; line is 0 when the input was a single token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(format(message, line, column)),
        message_(message),
        line_(line),
        column_(column) {}

  /// The same error with `context` (a file name, an argument) in front.
  ParseError(const std::string& context, const ParseError& inner)
      : std::runtime_error(context + ": " + inner.what()),
        message_(inner.message_),
        line_(inner.line_),
        column_(inner.column_) {}

  /// The message without position information.
  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    if (line == 0) return "column " + std::to_string(column) + ": " + message;
    return "line " + std::to_string(line) + ", column " +
           std::to_string(column) + ": " + message;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// An operation was called outside its domain (trivial class where a
/// non-trivial one is required, excluded surface, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The inputs lie outside the regime where the linked-pair count is known to
/// equal the geometric intersection number (non-primitive classes or classes
/// sharing a primitive root).
class UnguaranteedRegime : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace goldman
