#pragma once

#include <stdexcept>
#include <string>

namespace gkz {

// A mathematical precondition of an operation does not hold for the given
// input (unbalanced input to a balanced-only routine, rank deficiency, ...).
class PreconditionError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Malformed user input: bad JSON, wrong shapes, unparsable scalars.
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string &what, std::string path = {})
      : std::invalid_argument(what), path_(std::move(path)) {}
  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

class DivisionByZero : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Arithmetic between scalars living in incompatible contexts, e.g. two
// different number fields.
class ContextMismatch : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace gkz
