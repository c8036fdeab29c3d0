#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bistab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: bad parameters, malformed function specs, invalid systems.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in an expression or function spec.
class ParseError : public ConfigError {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(std::size_t offset, const std::string& identifier);

  const std::string& identifier() const noexcept { return identifier_; }

 private:
  std::string identifier_;
};

/// Evaluation outside the domain of an expression (log of a non-positive number, division by zero...).
class DomainError : public Error {
 public:
  DomainError(const std::string& subexpression, double point, const std::string& reason);

  const std::string& subexpression() const noexcept { return subexpression_; }
  double point() const noexcept { return point_; }

 private:
  std::string subexpression_;
  double point_;
};

/// A numerical result contradicts a guarantee that should hold (for example more than three
/// fixed points for a certified pair). Signals a numerics bug rather than a mathematical outcome.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class CertificationViolation : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// f' vanishes numerically somewhere on the window of an inverse.
class InversionError : public Error {
 public:
  using Error::Error;
};

class NotBistableError : public Error {
 public:
  using Error::Error;
};

}  // namespace bistab
