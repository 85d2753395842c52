#pragma once

#include <stdexcept>
#include <string>

namespace specfilt {

enum class ErrorKind {
  Config,
  Numeric,
  Calibration,
  Io,
};

/// Base class for failures the library reports to callers. Precondition
/// violations on plain arguments use std::invalid_argument / std::out_of_range.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(ErrorKind::Config, field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

class CalibrationError : public Error {
 public:
  explicit CalibrationError(const std::string& what) : Error(ErrorKind::Calibration, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace specfilt
