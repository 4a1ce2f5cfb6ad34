#pragma once

#include <stdexcept>
#include <string>

namespace beauville {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or infeasible parameters (CLI exit code 2).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded (CLI exit code 3).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Division or inversion by zero in a field or residue ring.
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Elements from different group handles were mixed.
class HandleMismatch : public Error {
 public:
  using Error::Error;
};

/// An invariant that the mathematics guarantees did not hold.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace beauville
