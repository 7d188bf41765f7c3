#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ostrovsky {

/// Input that cannot be represented, e.g. a rational function with a zero denominator.
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The equation is well formed but outside what the symbolic pipeline handles.
class UnsupportedEquation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// omega(sum xi) - sum omega(xi) vanished identically.
class DegenerateDispersion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested truncation order lies below the first order of the series.
class EmptySeries : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in the equation DSL. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ostrovsky
