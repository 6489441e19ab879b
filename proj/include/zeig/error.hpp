#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zeig {

enum class Errc {
  BadShape,
  BadArity,
  NegativeEntry,
  NonFiniteEntry,
  IndexOutOfRange,
  DuplicateIndexTuple,
  DimensionMismatch,
  ZeroVector,
  NegativeInput,
  InvalidArgument,
  SingularShift,
  SingularBordered,
  PerturbationExhausted,
  ZeroDenominator,
  ProjectionEmpty,
  InsufficientData,
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace zeig
