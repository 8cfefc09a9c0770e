#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace herbrand {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A symbol is used with two different arities.
class ArityError : public Error {
 public:
  using Error::Error;
};

class PathError : public Error {
 public:
  using Error::Error;
};

// Strict substitution would capture a free variable of the range.
class CaptureError : public Error {
 public:
  using Error::Error;
};

// Input is required to be rectified but is not.
class NotRectifiedError : public Error {
 public:
  using Error::Error;
};

// An enumeration or expansion would exceed the configured node budget.
class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

// A selection tree does not mirror the quantifier skeleton it is applied to.
class SkeletonMismatch : public Error {
 public:
  using Error::Error;
};

// A rule application violates a named side-condition.
class KernelError : public Error {
 public:
  KernelError(std::string condition, const std::string& detail)
      : Error(condition + ": " + detail), condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

}  // namespace herbrand
