#pragma once

#include <stdexcept>
#include <string>

namespace pf {

// Malformed textual input. offset is a byte offset (graph6) or a 1-based
// line number (edge lists, text formats), depending on the parser.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long position)
      : std::runtime_error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
  long position() const { return position_; }

 private:
  long position_;
};

// Arguments outside an operation's domain (bad family/k, size mismatch...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds what an exhaustive method can do (vertex limits, etc).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symbolic expansion would exceed the configured work guard.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pf
