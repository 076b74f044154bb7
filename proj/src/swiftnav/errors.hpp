#ifndef SWIFTNAV_ERRORS_HPP_
#define SWIFTNAV_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace swiftnav {

// Bad argument to a pure operation (non-positive step, k < 1, T <= 0, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's precondition in a way that signals a logic
// bug upstream (zero-weight center, regret below the known optimum).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Floating-point state that cannot be recovered from (NaN at the current
// state, a transition distribution that does not sum to one).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment or problem configuration rejected before any evaluation.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Malformed input text; line is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swiftnav

#endif  // SWIFTNAV_ERRORS_HPP_
