#pragma once

#include <stdexcept>
#include <string>

namespace sdc {

// Exception hierarchy. The CLI maps each class to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (GM files, catalog lines).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A code or object failed a structural requirement (not self-dual, wrong length, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A requested enumeration exceeds its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A classification run did not reach its mass-formula target.
class IncompleteError : public Error {
 public:
  using Error::Error;
};

// Internal consistency failure: a mathematical guarantee did not hold.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdc
