#include "axent/log_count.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace axent {

LogCount LogCount::exact(BigInt value) {
  if (value < 0) throw std::domain_error("LogCount: negative count");
  const double l = log_of(value);
  return LogCount(std::move(value), l);
}

LogCount LogCount::from_log(double natural_log) { return LogCount(std::nullopt, natural_log); }

LogCount LogCount::zero() { return LogCount(BigInt(0), -std::numeric_limits<double>::infinity()); }

bool LogCount::is_zero() const {
  if (exact_) return *exact_ == 0;
  return std::isinf(log_) && log_ < 0;
}

const BigInt& LogCount::exact_value() const {
  if (!exact_) throw std::logic_error("LogCount: exact value not available");
  return *exact_;
}

LogCount LogCount::operator*(const LogCount& other) const {
  if (is_zero() || other.is_zero()) return zero();
  if (exact_ && other.exact_) return exact(*exact_ * *other.exact_);
  return from_log(log_ + other.log_);
}

LogCount LogCount::pow(std::uint64_t exponent) const {
  if (exponent == 0) return exact(1);
  if (is_zero()) return zero();
  if (exact_) return exact(pow_big(*exact_, exponent));
  return from_log(log_ * static_cast<double>(exponent));
}

std::string LogCount::to_string() const {
  if (exact_) return exact_->str();
  std::ostringstream os;
  os.precision(17);
  os << "exp(" << log_ << ")";
  return os.str();
}

}  // namespace axent
