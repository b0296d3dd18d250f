#pragma once

#include <stdexcept>
#include <string>

namespace suppvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition (CLI exit status 2).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but outside what the library handles (exit status 2).
class UnsupportedError : public InputError {
 public:
  using InputError::InputError;
};

/// A configured size budget would be exceeded (exit status 3).
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check failed; indicates a bug or an inconsistent user table (exit status 4).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace suppvar
