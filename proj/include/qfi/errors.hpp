#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfi {

/// Input violates a type invariant or an operation precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of the operation (e.g. T < 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds the desk-scale resource limits (e.g. ED beyond N = 14).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed input file; carries the 1-based line number of the offence.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Rescaled curves do not overlap enough to be compared.
class CollapseError : public std::runtime_error {
 public:
  CollapseError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}

  double window_lo() const noexcept { return lo_; }
  double window_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace qfi
