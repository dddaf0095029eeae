#pragma once

#include <stdexcept>
#include <string>

namespace skewcert {

/// Raised for every mathematical precondition failure in the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation was abandoned because it would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace skewcert
