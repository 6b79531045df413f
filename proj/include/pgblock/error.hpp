#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgblock {

enum class ErrorCode {
  // field construction and arithmetic
  NonPrimeP,
  NoBuiltinModulus,
  ReducibleModulus,
  InvalidModulus,
  FieldTooLarge,
  InverseOfZero,
  // geometry kernel
  BudgetExceeded,
  DimensionMismatch,
  BadFrame,
  PointInCenter,
  // counting
  InvalidQ,
  HypothesisViolated,
  // blocking sets and lemma checks
  NotBlocking,
  NotALine,
  RhoMeetsB0,
  WrongAmbient,
  B0NotInSigma,
  PNotInSigma,
  PInB0,
  // constructions
  BadPencil,
  EmptyPart,
  WrongAnchorDim,
  WrongParameters,
  // front end
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception; `code()` is
/// the stable, testable part and `what()` is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pgblock
