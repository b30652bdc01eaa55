#pragma once

#include <stdexcept>
#include <string>

namespace rosq {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: unknown generator, index out of range, malformed window.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The requested region is not fully determined by the computed lattice.
class WindowError : public Error {
 public:
  using Error::Error;
};

// A page turn produced data outside the expected algebraic shapes, or a
// structural theorem (d∘d = 0, survival of detecting classes) failed.
class PatternViolation : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rosq
