#pragma once

#include <stdexcept>
#include <string>

namespace starchart {

// Malformed user input: bad expression text, unknown states, bad JSON.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A precondition on a structure (witness validity, bisimulation, splitting)
// does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal verification failed. Seeing one of these means a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace starchart
