#pragma once

#include <stdexcept>
#include <string>

namespace plswe {

enum class Errc {
  InvalidArgument,
  NotPrime,
  ZeroInverse,
  BothZero,
  InexactDivision,
  DivisionByZero,
  AllZero,
  RateOutOfRange,
  NoFixedPoint,
  EmptySolutionSpace,
  RankAboveOne,
  CertificationFailed,
  ZeroDenominator,
  FieldTooSmall,
  DegenerateSystem,
  RankDropPoint,
  SupportOutOfRange,
  DenominatorVanishes,
  SingularEvaluation,
  BudgetViolated,
  MaxLExceeded,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the early-termination driver, the CLI exit-code mapping) can
/// branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace plswe
