#pragma once

#include <stdexcept>
#include <string>

namespace cvdistill {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomial degree would exceed the configured bound.
class DegreeOverflowError : public Error {
 public:
  using Error::Error;
};

// Gaussian kernel whose real quadratic form is not positive definite.
class SingularKernelError : public Error {
 public:
  using Error::Error;
};

// Operation annihilated the state (trace below 1e-30).
class ZeroStateError : public Error {
 public:
  using Error::Error;
};

class InvalidCovarianceError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed to converge, or a result violated a numeric guard.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvdistill
