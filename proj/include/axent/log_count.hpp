#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "axent/bigint.hpp"

namespace axent {

// A pattern count held either exactly or as a natural log. The log value is
// always populated; the exact value only when it was computed exactly.
// Zero counts carry log = -inf.
class LogCount {
 public:
  LogCount() : LogCount(zero()) {}

  static LogCount exact(BigInt value);
  static LogCount from_log(double natural_log);
  static LogCount zero();

  bool is_exact() const { return exact_.has_value(); }
  bool is_zero() const;
  double log() const { return log_; }

  // Throws std::logic_error if the count was not computed exactly.
  const BigInt& exact_value() const;

  // Log-only view of this count.
  LogCount as_log() const { return from_log(log_); }

  LogCount operator*(const LogCount& other) const;
  LogCount pow(std::uint64_t exponent) const;

  std::string to_string() const;

 private:
  LogCount(std::optional<BigInt> exact, double log) : exact_(std::move(exact)), log_(log) {}

  std::optional<BigInt> exact_;
  double log_;
};

}  // namespace axent
