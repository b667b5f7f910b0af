#pragma once

#include <stdexcept>
#include <string>

namespace ptmag {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-range model parameter.
class ParameterRangeError : public Error {
 public:
  using Error::Error;
};

/// Division by a quantity that must be strictly positive (M, V_m, unit, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// A root or extremum was not found in the requested bracket.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Singular linear system or a pole of a closed-form expression.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// g2 requested for a state with no population in the relevant mode.
class UndefinedStatisticsError : public Error {
 public:
  using Error::Error;
};

class NoSteadyStateError : public Error {
 public:
  using Error::Error;
};

class PositivityViolationError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// The eigenvector matrix is defective (exceptional point).
class DegenerateTransformError : public Error {
 public:
  using Error::Error;
};

/// Configuration problem; carries the offending key and 1-based line number (0 when unknown).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, int line, const std::string& what) {
    std::string out = "config";
    if (line > 0) out += " line " + std::to_string(line);
    if (!key.empty()) out += " key '" + key + "'";
    return out + ": " + what;
  }

  std::string key_;
  int line_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Every point of a sweep failed.
class SweepError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptmag
