#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weilcalc {

enum class ErrorKind {
  AlgebraMismatch,
  InvalidAlgebra,
  SpanNotClosed,
  NotUnital,
  NotMultiplicative,
  DomainError,
  DivisionByNilpotent,
  ArityMismatch,
  ShapeMismatch,
  IncompatiblePair,
  SingularLinearPart,
  InvariantViolation,
  NonProjectable,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the engine; `kind()` says which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace weilcalc
