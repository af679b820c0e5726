#pragma once

#include <stdexcept>
#include <string>

namespace jsrkit {

/// Base class for every error jsrkit throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or sizes of the arguments do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition (range, finiteness, symmetry).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// A configured size or enumeration cap would be exceeded.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

/// An iterative method stalled or failed to converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input document, certificate, or SDPA file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace jsrkit
