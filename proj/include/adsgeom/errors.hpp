#pragma once

#include <stdexcept>

namespace adsgeom {

// Malformed input: bad dimensions, unparsable text, det != 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well formed but violates a mathematical precondition.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// No available reduction can decide the question.
class UndecidableError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace adsgeom
