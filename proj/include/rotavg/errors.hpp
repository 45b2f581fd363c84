#pragma once

#include <stdexcept>
#include <string>

namespace rotavg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix fails the SO(3) membership test.
class InvalidRotation : public Error {
 public:
  using Error::Error;
};

class NonUnitQuaternion : public Error {
 public:
  using Error::Error;
};

/// The nearest rotation to a matrix is not unique.
class DegenerateProjection : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidDataset : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Iterative method hit its iteration cap.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Malformed dataset file (bad token, mixed arity, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parsed record is not a rotation/unit quaternion within tolerance.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rotavg
