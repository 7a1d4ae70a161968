#pragma once

#include <stdexcept>
#include <string>

namespace gtrans {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent dimensions, out-of-range indices, unparsable input.
class MalformedInstance : public Error {
 public:
  using Error::Error;
};

/// The family or transformation violates a constraint the solver requires.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the hard size cap of an exponential-time routine.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// A number handed to the base-A decoder is not well-behaved.
class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace gtrans
