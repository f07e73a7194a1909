#pragma once

#include <stdexcept>
#include <string>

namespace kclass {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but violates an operation's precondition
/// (ill-defined homomorphism, non-exact sequence, wrong dimensions).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Input the library refuses to decide rather than guess about.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace kclass
