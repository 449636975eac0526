#pragma once

#include <stdexcept>
#include <string>

namespace moduli {

enum class ErrorKind {
  DivisionByZero,
  ConductorMismatch,
  NotDivisible,
  NotReal,
  ZeroRadicand,
  NotSquareFreeCertified,
  SingularMatrix,
  DegenerateTriple,
  ZeroMap,
  FactoredFormRequired,
  RootsNotInField,
  UnsupportedConfiguration,
  WeightMismatch,
  NotAGroup,
  UnclassifiedOrder,
  InfiniteAutomorphismGroup,
  DescentVerificationFailed,
  Obstructed,
  PreconditionViolated,
  DegenerateMu,
  DegenerateExponents,
  SupportSizeMismatch,
  ParseError,
  InvariantViolation,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace moduli
