#pragma once

#include <stdexcept>
#include <string>

namespace qesk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A required input file is missing or unreadable.
class LoadError : public Error {
public:
  using Error::Error;
};

/// Malformed input content; the message carries file and line.
class FormatError : public Error {
public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Eigensolver failure, division by a zero diagonal and similar.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Inconsistent run options (bad policy, empty grid, size mismatch).
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace qesk
