#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropform {

enum class ErrorKind {
  DivisionByZero,
  PrecisionExhausted,
  NonSplitRoot,
  NotSmall,
  NoDominantTerm,
  WindowTooSmall,
  NonConvergent,
  InfiniteSlopeMismatch,
  NonSplitDenominator,
  ZeroForm,
  PoleInAnnulus,
  UnsupportedGenus,
  ResidueMismatch,
  NormViolation,
  IncompatibleBinomials,
  TruncationTooSmall,
  NotDominant,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tropform
