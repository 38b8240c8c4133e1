#pragma once

#include <stdexcept>
#include <string>

namespace xnr {

// Rejected input. `constraint()` names the violated precondition so callers
// (and the CLI) can report it without parsing the message.
class InvalidArgument : public std::invalid_argument {
 public:
  InvalidArgument(std::string constraint, const std::string& what)
      : std::invalid_argument(what), constraint_(std::move(constraint)) {}
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

// A configured size/term budget would be exceeded.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical claim under test was contradicted by a computation
// (e.g. an automorphism image off the curve). Always carries a witness.
class Falsification : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace xnr
