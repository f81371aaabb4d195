#include "miquel/error.hpp"

namespace miquel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CollinearPoints: return "CollinearPoints";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::PeriodicityViolation: return "PeriodicityViolation";
    case ErrorCode::NonConcyclicFace: return "NonConcyclicFace";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::CollinearMonodromies: return "CollinearMonodromies";
    case ErrorCode::NotOnCommonHyperbola: return "NotOnCommonHyperbola";
    case ErrorCode::InvalidAbscissas: return "InvalidAbscissas";
    case ErrorCode::AmbiguousClass: return "AmbiguousClass";
    case ErrorCode::FitFailure: return "FitFailure";
    case ErrorCode::DegenerateFaceCircle: return "DegenerateFaceCircle";
    case ErrorCode::CoincidentCenters: return "CoincidentCenters";
    case ErrorCode::FlatAngle: return "FlatAngle";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::WrongClass: return "WrongClass";
    case ErrorCode::EmptyRealLocus: return "EmptyRealLocus";
    case ErrorCode::NoRealAxisPoint: return "NoRealAxisPoint";
    case ErrorCode::NotNondegenerate: return "NotNondegenerate";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::DegenerateGradient: return "DegenerateGradient";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DifferentBranches: return "DifferentBranches";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::BranchTrackingFailure: return "BranchTrackingFailure";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
      return 1;
    case ErrorCode::FlatAngle:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::WrongClass:
    case ErrorCode::EmptyRealLocus:
    case ErrorCode::NoRealAxisPoint:
    case ErrorCode::NotNondegenerate:
    case ErrorCode::NotOnCurve:
    case ErrorCode::DegenerateGradient:
    case ErrorCode::OutOfDomain:
    case ErrorCode::DifferentBranches:
      return 3;
    case ErrorCode::SolverFailure:
    case ErrorCode::QuadratureFailure:
    case ErrorCode::BranchTrackingFailure:
      return 4;
    default:
      return 2;
  }
}

}  // namespace miquel
