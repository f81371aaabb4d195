#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace miquel {

enum class ErrorCode {
  // geometry
  CollinearPoints,
  DegenerateInput,
  ParallelLines,
  // pattern
  PeriodicityViolation,
  NonConcyclicFace,
  DegenerateFace,
  CollinearMonodromies,
  NotOnCommonHyperbola,
  InvalidAbscissas,
  AmbiguousClass,
  FitFailure,
  DegenerateFaceCircle,
  CoincidentCenters,
  // quartic
  FlatAngle,
  ZeroDenominator,
  WrongClass,
  EmptyRealLocus,
  NoRealAxisPoint,
  // group law
  NotNondegenerate,
  NotOnCurve,
  DegenerateGradient,
  SolverFailure,
  // measure
  OutOfDomain,
  DifferentBranches,
  QuadratureFailure,
  BranchTrackingFailure,
  // front end
  Io,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Exit-code family of an error: 1 I/O, 2 invalid input, 3 degenerate
/// mathematics, 4 solver or quadrature failure.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace miquel
