#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twoclosure {

/// A caller-supplied input violates an operation's hypotheses.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element-listing or search operation was asked to work above its size guard.
class guard_exceeded : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

/// Malformed textual input; line and column are 1-based, 0 when unknown.
class parse_error : public precondition_error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : precondition_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An internal invariant broke: a construction produced something the math rules out.
class defect_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace twoclosure
