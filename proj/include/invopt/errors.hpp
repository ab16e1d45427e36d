#pragma once

#include <stdexcept>
#include <string>

namespace invopt {

// Error hierarchy. The CLI maps each family to a message prefix and exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Bad or inconsistent configuration (flags, parameter files, perturbations).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Missing or unreadable files.
class IoError : public Error {
 public:
  using Error::Error;
};

// Input data that parses but violates an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed input text; carries the offending line.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Factorization or solve failures that survive jitter escalation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace invopt
