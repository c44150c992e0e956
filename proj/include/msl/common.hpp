#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace msl {

using cplx = std::complex<double>;

// Systems are at most 4x4; fixed maximum sizes keep Eigen off the heap.
constexpr int kMaxDim = 4;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input or hypothesis problems (CLI exit code 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Failures of a numerical task on valid input (CLI exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class PositionOutsideInterval : public ValidationError {
 public:
  PositionOutsideInterval(double x, double a, double b);
  double position;
};

class HypothesisViolation : public ValidationError {
 public:
  enum class Clause {
    IntervalMismatch,
    RhoNotPositive,
    ChiNotReal,
    SigmaNotReal,
    SigmaSupport,
    SharedAtom,
    GapSign,
    SupportTooSmall,
  };
  HypothesisViolation(Clause clause, const std::string& detail);
  Clause clause;
  static const char* clause_name(Clause c);
};

class EndpointNotRegular : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NoGapAtEndpoint : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidBC : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotOnePoint : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularJump : public NumericalError {
 public:
  explicit SingularJump(double x);
  double position;
};

class ZAtEigenvalue : public NumericalError {
 public:
  explicit ZAtEigenvalue(cplx z);
  cplx z;
};

class ZOnSpectrum : public NumericalError {
 public:
  explicit ZOnSpectrum(cplx z);
  cplx z;
};

class BracketTooCoarse : public NumericalError {
 public:
  BracketTooCoarse(double lo, double hi);
  double lo, hi;
};

class DenominatorVanishes : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

enum class Side { A, B };

}  // namespace msl
