#pragma once

#include <stdexcept>
#include <string>

namespace ekss {

// Base class of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: wrong shape, out-of-range parameter, violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The numbers went wrong: non-finite values, non-converging diagnostics.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A run that must stay regular left the finite range.
class BlowupError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ekss
