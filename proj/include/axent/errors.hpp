#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace axent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad matrix literal, unknown preset, inconsistent spec.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed its configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The input does not satisfy a mathematical hypothesis of the requested operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double last_estimate, std::vector<double> last_iterate)
      : Error(what), last_estimate_(last_estimate), last_iterate_(std::move(last_iterate)) {}

  double last_estimate() const { return last_estimate_; }
  const std::vector<double>& last_iterate() const { return last_iterate_; }

 private:
  double last_estimate_;
  std::vector<double> last_iterate_;
};

}  // namespace axent
