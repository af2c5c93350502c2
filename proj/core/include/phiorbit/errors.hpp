#pragma once

#include <stdexcept>
#include <string>

namespace phiorbit {

// Base for every error raised by the library. Guard outcomes of orbit
// evaluation are ordinary return values and never use these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (n = 0, odd k where even is
// required, malformed seeds, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An intermediate value left the 64-bit range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A configured memory or prime-enumeration cap was exceeded.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace phiorbit
