#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfsem {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown labels, bad files, invariant violations of user data.
class InputError : public Error {
 public:
  using Error::Error;
};

// Text-format parse failure. `line` is 1-based; 0 when not applicable.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : InputError(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (column > 0) out += "column " + std::to_string(column) + ": ";
    return out + what;
  }

  std::size_t line_;
  std::size_t column_;
};

class CycleError : public InputError {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : InputError(describe(cycle)), cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  static std::string describe(const std::vector<std::string>& cycle) {
    std::string out = "directed cycle: ";
    for (const auto& v : cycle) out += v + " -> ";
    if (!cycle.empty()) out += cycle.front();
    return out;
  }

  std::vector<std::string> cycle_;
};

// A documented operation precondition does not hold (distinct from a
// negative verdict of the check itself).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Conditioning on a zero-probability event.
class PositivityError : public Error {
 public:
  using Error::Error;
};

// Enumeration exceeded its configured cap. `required` is the count that
// would have been needed.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t required, std::size_t cap)
      : Error(what + ": requires " + std::to_string(required) + ", cap is " +
              std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::size_t required() const { return required_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t required_;
  std::size_t cap_;
};

}  // namespace cfsem
