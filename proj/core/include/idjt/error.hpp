#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idjt {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed model text. Line and column are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A caller handed in something outside an operation's contract
// (unknown variable, domain mismatch, bad elimination sequence, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// x / 0 with x != 0.
class DivisionError : public Error {
 public:
  using Error::Error;
};

// An internal invariant of the compile/solve pipeline did not hold
// (phi constancy at decision steps, strong-tree structure, clique index uniqueness, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// The brute-force evaluator refused a model larger than its cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace idjt
