#pragma once

#include <stdexcept>
#include <string>

namespace resfront {

// Malformed or inconsistent input (instance files, ids, configs).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A brute-force routine refused to run because the instance exceeds its budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A matching handed to a frontier routine turned out to be dominated.
class DominatedInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant that the theory guarantees was violated; indicates a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace resfront
