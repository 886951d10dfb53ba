#pragma once

#include <stdexcept>
#include <string>

namespace transnn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural problem with a network specification or a document.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a hard size limit (oracle state space, compiler arity).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace transnn
