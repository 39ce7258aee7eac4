#pragma once

#include <stdexcept>
#include <string>

namespace ocsep {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input. CLI exit code 2.
struct InputError : Error {
  using Error::Error;
};

struct DimensionError : InputError {
  using InputError::InputError;
};

// An operation that needs a unit hit a zero determinant.
struct SingularMatrixError : Error {
  using Error::Error;
};

// The ground field cannot support the requested computation
// (composite or oversized modulus, field below the sampling floor).
// CLI exit code 3.
struct FieldError : Error {
  using Error::Error;
};

// A proven invariant failed at runtime. Always a bug, never user error.
struct InternalError : Error {
  using Error::Error;
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace ocsep
