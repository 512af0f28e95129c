#pragma once

#include <stdexcept>
#include <string>

namespace zest {

/// Base class for all errors raised by the library. Input-validation
/// failures throw a subclass; numerical trouble inside a solve is reported
/// through SolveReport::status instead of an exception.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class CompletenessViolation : public Error {
 public:
  using Error::Error;
};

class NotStochastic : public Error {
 public:
  using Error::Error;
};

class AllZeroInput : public Error {
 public:
  using Error::Error;
};

class SubspaceNotValid : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace zest
