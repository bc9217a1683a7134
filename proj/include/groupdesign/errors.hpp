#pragma once

#include <stdexcept>
#include <string>

namespace groupdesign {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-square input, or a matrix that fails the Hermitian symmetry check.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented parameter domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A matrix required to be positive semidefinite has a significantly
// negative eigenvalue.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

// A matrix required to be positive definite is singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

// range(K) is not contained in range(M): the design cannot estimate the
// selected coefficient blocks.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// An operation precondition (e.g. equal weights) does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; the message carries the line number.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed but semantically unusable data (empty file, non-unit rows, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An iterative construction did not converge; carries the final residual.
class ConstructionError : public Error {
 public:
  ConstructionError(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace groupdesign
