#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cka {

/// Malformed graph-file input.  Carries the 1-based line and column of the
/// offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + std::move(message)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A caller-supplied argument violates an operation's precondition
/// (unknown id, subset not hereditary/saturated, malformed cycle, ...).
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& message)
      : std::runtime_error(message) {}
};

/// An analysis cap was exceeded (vertex count for exponential enumerations,
/// cycle count limit).  The operation refuses rather than truncating.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& message)
      : std::runtime_error(message) {}
};

/// An internal invariant failed.  Always a bug, never a caller error.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& message)
      : std::logic_error(message) {}
};

/// Assert an internal invariant; throws InternalError when it fails.
inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw InternalError("invariant violated: " + what);
}

}  // namespace cka
