#pragma once

#include <stdexcept>
#include <string>

namespace anticyc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// The p-adic evaluation needed more digits than the configured ceiling.
class PrecisionCeiling : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// A local L-factor or Euler factor was evaluated at a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A bounded search finished without a witness.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Malformed or schema-violating input document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace anticyc
