#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Field specification that cannot host the requested arithmetic.
class InvalidField : public Error {
 public:
  using Error::Error;
};

/// Operands living in different rings, or a homomorphism of the wrong arity.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured degree, size, or time cap was hit. Never a mathematical verdict.
class ResourceExceeded : public Error {
 public:
  using Error::Error;
};

/// A certificate condition failed; the reduction it describes is unsound.
class CertificateError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace fermat
