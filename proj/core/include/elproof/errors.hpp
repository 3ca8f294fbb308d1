#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elproof {

enum class ErrorKind {
  Syntax,
  Arity,
  UnknownKeyword,
  UnknownName,
  UnsupportedFeature,
  UnsupportedGoal,
  ResourceLimit,
  Timeout,
  GoalNotDerivable,
  MissingRolePair,
  SizeLimit,
  InvalidProof,
  Io,
  Format,
};

const char* to_string(ErrorKind kind);

/// Base error for everything the library reports. The kind drives the
/// status mapping in the benchmark driver.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Errors raised while reading `.elt` text; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, std::size_t line, std::size_t column,
             const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace elproof
