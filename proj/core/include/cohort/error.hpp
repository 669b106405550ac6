#pragma once

#include <stdexcept>
#include <string>

namespace cohort {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown ids, bad file contents, inconsistent sizes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A model that cannot be satisfied for structural reasons, detected before
/// any search (for example a locked student whose battalion has no other
/// company while the no-stay rule is active).
class StructuralInfeasibility : public Error {
 public:
  using Error::Error;
};

/// Raised when a primal vector does not map back onto a single company per
/// student. Signals a solver defect rather than a user error.
class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace cohort
