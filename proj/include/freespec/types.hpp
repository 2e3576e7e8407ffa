#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace freespec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class Field { kReal, kComplex };

/// The smallest field containing both arguments.
inline Field join(Field a, Field b) {
  return (a == Field::kComplex || b == Field::kComplex) ? Field::kComplex : Field::kReal;
}

const char* to_string(Field f);
Field field_from_string(const std::string& s);

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidTuple,
  kIllFormedCombination,
  kBadNormalization,
  kNotPsd,
  kUnboundedDomain,
  kOutsideDomain,
  kHierarchyViolation,
  kIterationCapExceeded,
  kUnboundedDirection,
  kInfeasibleStart,
  kInfeasibleBeta,
  kUnboundedAlpha,
  kAlreadyMaximal,
  kFieldUnsupported,
  kDescentFailure,
  kBlockingFailure,
  kNotStrictContraction,
  kSingularT,
  kOutsideCube,
  kLevelTooLarge,
  kUnknownName,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Numerical thresholds shared by every module. Defaults are the library-wide
/// conventions; callers override individual fields (the CLI exposes feas/ker).
struct Tolerances {
  double sym = 1e-10;          // hermitian deviation, relative to 1 + ||M||_F
  double comb = 1e-8;          // ||sum g*g - I||_F for combinations
  double rank = 1e-10;         // numerical rank, relative to sigma_max
  double trace = 1e-8;         // word-trace comparisons, relative to 1 + max |trace|
  double feas = 1e-7;          // membership band around lambda_min = 0
  double ker = 1e-8;           // kernels and null spaces, relative
  double block = 1e-8;         // off-block residual after block diagonalization
  double reconstruct = 1e-6;   // decomposition reconstruction, relative to 1 + ||X||_F
};

}  // namespace freespec
