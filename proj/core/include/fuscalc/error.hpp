#pragma once

#include <stdexcept>
#include <string>

namespace fuscalc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: invalid tables, bad generators, inconsistent files.
struct InputError : Error {
  using Error::Error;
};

// The requested computation exceeds the configured group-order caps.
struct CapError : InputError {
  using InputError::InputError;
};

// A stated precondition of an operation does not hold for the arguments.
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace fuscalc
