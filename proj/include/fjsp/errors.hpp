#pragma once

#include <stdexcept>
#include <string>

namespace fjsp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dangling job, machine, plan, operation or type reference.
class InvalidReferenceError : public Error {
 public:
  using Error::Error;
};

/// An instance (or instance file) that breaks a structural invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Text that could not be parsed; the message carries line/field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

}  // namespace fjsp
