#pragma once

#include <stdexcept>
#include <string>

namespace bredon {

/// Base of every error raised by the engine.  The exit code is what the CLI
/// returns when the error escapes a command.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

/// Malformed or inconsistent input data (tables, homs, cocycles, complexes).
class ValidationError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// A computed result disagrees with an expectation or an internal certificate.
class VerificationError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

/// K-theory readout requested without an established collapse.
class CollapseError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

}  // namespace bredon
