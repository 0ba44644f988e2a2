#pragma once

#include <stdexcept>
#include <string>

namespace quperman {

/// Base of every error raised by the library. The app layer maps the
/// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: unreadable paths, malformed documents, bad tags.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration document or option combination.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

/// A numeric argument outside the domain of a model function.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// A model parameter that makes the model ill-defined (e.g. kSlope <= 1).
class ParameterError : public InputError {
 public:
  using InputError::InputError;
};

/// A persisted document carries a schema version this build cannot read.
class VersionError : public InputError {
 public:
  using InputError::InputError;
};

/// A benchmark filter matched no entries.
class EmptyDistributionError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace quperman
