#pragma once

#include <stdexcept>
#include <string>

namespace hierfix {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (dimension mismatch, bad argument).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An iterative projection (Dykstra) failed to reach its tolerance.
class ProjectionError : public Error {
 public:
  using Error::Error;
};

/// Problem constants or inputs fail an admissibility inequality.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The reference VI solver exhausted its iteration budget.
class OracleError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration. `key()` names the offending entry.
class ParseError : public Error {
 public:
  ParseError(std::string key, const std::string& what)
      : Error(key.empty() ? what : "config key '" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace hierfix
