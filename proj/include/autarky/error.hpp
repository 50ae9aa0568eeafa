#ifndef AUTARKY_ERROR_HPP
#define AUTARKY_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace autarky {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension mismatches and other malformed arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An input violates an operation's documented precondition
/// (e.g. minimize_submodular on a non-submodular energy).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Exhaustive enumeration would exceed the configured labeling budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace autarky

#endif  // AUTARKY_ERROR_HPP
