#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ethica {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A formula does not match the signature (arity, argument sorts, binding).
class SortError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// Lookup of a predicate, definition, axiom, bundle or experiment failed.
class UnknownNameError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The search exceeded its propagation budget before reaching a verdict.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class InsufficientEvidenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ethica
