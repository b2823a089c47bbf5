#ifndef ELLNB_ERRORS_HPP
#define ELLNB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ellnb {

enum class ErrorCode {
  ConductorMismatch,
  NonzeroConstantTerm,
  ZeroLinearCoefficient,
  DivisionByZero,
  NonzeroResidue,
  NotAGerm,
  NoExactExponential,
  NoExactRoot,
  NoExactLogarithm,
  NotTangent,
  Identity,
  ZeroField,
  Periodic,
  TruncationTooLow,
  NotInModel,
  Nonabelian,
  IntegrandNotHolomorphic,
  CommutationFailure,
  BackendMismatch,
  DegenerateCrossRatio,
  Undetected,
  InconsistentAffine,
  NotF0Type,
  NonHyperbolic,
  NoConvergence,
  PrecisionExhausted,
  StepBudgetExceeded,
  InvalidInput,
  InternalConsistency,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConductorMismatch: return "CONDUCTOR_MISMATCH";
    case ErrorCode::NonzeroConstantTerm: return "NONZERO_CONSTANT_TERM";
    case ErrorCode::ZeroLinearCoefficient: return "ZERO_LINEAR_COEFFICIENT";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::NonzeroResidue: return "NONZERO_RESIDUE";
    case ErrorCode::NotAGerm: return "NOT_A_GERM";
    case ErrorCode::NoExactExponential: return "NO_EXACT_EXPONENTIAL";
    case ErrorCode::NoExactRoot: return "NO_EXACT_ROOT";
    case ErrorCode::NoExactLogarithm: return "NO_EXACT_LOGARITHM";
    case ErrorCode::NotTangent: return "NOT_TANGENT";
    case ErrorCode::Identity: return "IDENTITY";
    case ErrorCode::ZeroField: return "ZERO_FIELD";
    case ErrorCode::Periodic: return "PERIODIC";
    case ErrorCode::TruncationTooLow: return "TRUNCATION_TOO_LOW";
    case ErrorCode::NotInModel: return "NOT_IN_MODEL";
    case ErrorCode::Nonabelian: return "NONABELIAN";
    case ErrorCode::IntegrandNotHolomorphic: return "INTEGRAND_NOT_HOLOMORPHIC";
    case ErrorCode::CommutationFailure: return "COMMUTATION_FAILURE";
    case ErrorCode::BackendMismatch: return "BACKEND_MISMATCH";
    case ErrorCode::DegenerateCrossRatio: return "DEGENERATE_CROSS_RATIO";
    case ErrorCode::Undetected: return "UNDETECTED";
    case ErrorCode::InconsistentAffine: return "INCONSISTENT_AFFINE";
    case ErrorCode::NotF0Type: return "NOT_F0_TYPE";
    case ErrorCode::NonHyperbolic: return "NON_HYPERBOLIC";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::PrecisionExhausted: return "PRECISION_EXHAUSTED";
    case ErrorCode::StepBudgetExceeded: return "STEP_BUDGET_EXCEEDED";
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::InternalConsistency: return "INTERNAL_CONSISTENCY";
  }
  return "UNKNOWN";
}

// Process exit status: 2 malformed input, 4 truncation too short, 3 otherwise.
inline int exit_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return 2;
    case ErrorCode::TruncationTooLow: return 4;
    default: return 3;
  }
}

class MathError : public std::runtime_error {
 public:
  MathError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw MathError(code, what);
}

}  // namespace ellnb

#endif  // ELLNB_ERRORS_HPP
