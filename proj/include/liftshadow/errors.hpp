#pragma once

#include <stdexcept>
#include <string>

namespace liftshadow {

/// Malformed input text or a structure violating its own invariants.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two structures were combined whose signatures do not agree.
class SignatureMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration ran past its configured node limit. Never a
/// negative answer: callers must report it separately.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace liftshadow
