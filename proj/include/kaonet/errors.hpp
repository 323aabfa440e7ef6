#pragma once

#include <stdexcept>
#include <string>

namespace kaonet {

enum class ErrorCode {
  dimension_mismatch,
  singular_decomposition,
  singular_leading_coefficient,
  polynomial_mismatch,
  real_eigenvalue,
  zero_off_diagonal,
  cpt_violation,
  constraint_violation,
  infeasible_spectrum,
  overdamped_mode,
  real_spectrum,
  degenerate_spectrum,
  step_too_large,
  config_error,
};

// Stable machine-readable name, used in CLI reports.
const char* error_code_name(ErrorCode code);

// CLI exit status: 2 config, 3 infeasible spectrum, 4 numerical failure.
int error_exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

#define KAONET_DEFINE_ERROR(Name, code_value)               \
  struct Name : Error {                                     \
    explicit Name(const std::string& w)                     \
        : Error(ErrorCode::code_value, w) {}                \
  }

KAONET_DEFINE_ERROR(DimensionMismatch, dimension_mismatch);
KAONET_DEFINE_ERROR(SingularDecomposition, singular_decomposition);
KAONET_DEFINE_ERROR(SingularLeadingCoefficient, singular_leading_coefficient);
KAONET_DEFINE_ERROR(PolynomialMismatch, polynomial_mismatch);
KAONET_DEFINE_ERROR(RealEigenvalue, real_eigenvalue);
KAONET_DEFINE_ERROR(ZeroOffDiagonal, zero_off_diagonal);
KAONET_DEFINE_ERROR(CptViolation, cpt_violation);
KAONET_DEFINE_ERROR(ConstraintViolation, constraint_violation);
KAONET_DEFINE_ERROR(InfeasibleSpectrum, infeasible_spectrum);
KAONET_DEFINE_ERROR(OverdampedMode, overdamped_mode);
KAONET_DEFINE_ERROR(RealSpectrum, real_spectrum);
KAONET_DEFINE_ERROR(DegenerateSpectrum, degenerate_spectrum);
KAONET_DEFINE_ERROR(StepTooLarge, step_too_large);
KAONET_DEFINE_ERROR(ConfigError, config_error);

#undef KAONET_DEFINE_ERROR

}  // namespace kaonet
