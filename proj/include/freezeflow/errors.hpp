#pragma once

#include <stdexcept>
#include <string>

namespace freezeflow {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inadmissible initial data.
class InvalidProblem : public Error {
 public:
  using Error::Error;
};

// v < w somewhere, or a boundary value mismatch.
class ConstraintViolation : public InvalidProblem {
 public:
  using InvalidProblem::InvalidProblem;
};

// Query outside the spatial domain, or an operation not defined for it.
class DomainError : public Error {
 public:
  using Error::Error;
};

// No subsonic move keeps the traced value within tolerance.
class TraceError : public Error {
 public:
  TraceError(const std::string& what, double x, double t)
      : Error(what), x_(x), t_(t) {}
  double x() const { return x_; }
  double t() const { return t_; }

 private:
  double x_;
  double t_;
};

// Too few samples to estimate something (corner slopes, fits).
class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace freezeflow
