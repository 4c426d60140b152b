#pragma once

#include <stdexcept>
#include <string>

namespace interplab {

/// Base class for all interplab errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a documented invariant.
class InvalidParams : public Error {
 public:
  using Error::Error;
};

/// Matrix/vector shapes do not line up (e.g. spectrum tail vs. feature columns).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The unregularized Gram system could not be factorized. Carries the smallest
/// pivot seen so callers can distinguish "coincident samples" from "d < n".
class GramSingular : public Error {
 public:
  GramSingular(const std::string& msg, double smallest_pivot)
      : Error(msg), smallest_pivot_(smallest_pivot) {}
  double smallest_pivot() const noexcept { return smallest_pivot_; }

 private:
  double smallest_pivot_;
};

/// Target function has coefficients outside the kernel's top block.
class UnsupportedTarget : public Error {
 public:
  using Error::Error;
};

/// A label probability left [0,1] by more than the documented tolerance.
class ProbabilityOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Relative error against a zero-norm target is undefined.
class ZeroTarget : public Error {
 public:
  using Error::Error;
};

class InvalidBracket : public Error {
 public:
  using Error::Error;
};

class DegenerateSurvival : public Error {
 public:
  using Error::Error;
};

class InvalidEigen : public Error {
 public:
  using Error::Error;
};

/// Symmetric eigensolver failed to converge.
class EigFailure : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyResult : public Error {
 public:
  using Error::Error;
};

/// A sweep cell kept failing after the allowed number of resamples.
class TrialFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace interplab
