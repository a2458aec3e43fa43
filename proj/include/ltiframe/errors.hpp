#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ltiframe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together (non-square A, B row mismatch, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Out-of-domain values: non-finite entries, empty ranges, bad horizons.
class ValueError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the system's time mode.
class UnsupportedModeError : public Error {
 public:
  using Error::Error;
};

/// A is not Hurwitz (continuous) or not Schur stable (discrete).
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, std::complex<double> eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}

  std::complex<double> eigenvalue() const { return eigenvalue_; }

 private:
  std::complex<double> eigenvalue_;
};

/// Raised when a quantity needs an invertible Gramian and the Gramian is
/// numerically singular. Carries the numerical rank that was found.
class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& what, int rank, int dimension)
      : Error(what), rank_(rank), dimension_(dimension) {}

  int rank() const { return rank_; }
  int dimension() const { return dimension_; }

 private:
  int rank_;
  int dimension_;
};

/// Minimum-energy transfer requested on a system whose Gramian is singular.
class UncontrollableError : public RankDeficientError {
 public:
  using RankDeficientError::RankDeficientError;
};

/// Classical MOQ (trace or minimum-eigenvalue inverse) on a singular Gramian.
class UndefinedMoqError : public RankDeficientError {
 public:
  using RankDeficientError::RankDeficientError;
};

/// A truncated frame whose tail certificate is too large to trust, or a
/// control expansion that did not capture enough energy.
class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ltiframe
