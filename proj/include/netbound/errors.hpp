#pragma once

#include <stdexcept>
#include <string>

namespace netbound {

// Malformed instance or partition text, or a network that violates the model.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// An argument that is well-formed but not acceptable to the operation
// (invalid partition, missing demands, wrong network family).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive search or LP would exceed the configured size limit.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netbound
