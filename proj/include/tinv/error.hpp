#pragma once

#include <stdexcept>
#include <string>

namespace tinv {

/// An input is outside what an exact engine can exhaust.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A produced certificate or a proved statement failed its own check. Signals a bug.
class VerificationFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tinv
