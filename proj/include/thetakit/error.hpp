#pragma once

#include <stdexcept>
#include <string>

namespace thetakit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Composition of morphisms whose source and target do not match, or a
/// morphism whose data is inconsistent with its endpoints.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A truncated computation needed grades beyond the bound it was given.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// A presheaf was evaluated at an object (or morphism) outside its support.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (JSON, CLI arguments).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant that should hold by theory failed to hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace thetakit
