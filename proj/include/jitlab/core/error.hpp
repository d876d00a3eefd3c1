#pragma once

#include <stdexcept>
#include <string>

namespace jitlab {

// Base of every error the library raises on purpose. Anything else escaping
// to the CLI is treated as an internal failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad invocation or configuration (CLI exit code 1).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Inputs that violate a documented precondition (CLI exit code 2).
class DataError : public Error {
 public:
  using Error::Error;
};

// A write raced with another writer, or an overwrite lacked its audit token.
class ConflictError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace jitlab
