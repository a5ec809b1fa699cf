#include "axent/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace axent {

std::uint64_t bit_length(const BigInt& value) {
  if (value <= 0) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(value)) + 1;
}

double log_of(const BigInt& value) {
  if (value < 0) throw std::domain_error("log_of: negative argument");
  if (value == 0) return -std::numeric_limits<double>::infinity();
  const std::uint64_t bits = bit_length(value);
  if (bits <= 1000) return std::log(value.convert_to<double>());
  // Keep the leading 64 bits; the discarded tail changes the log by < 2^-63.
  const std::uint64_t shift = bits - 64;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

BigInt pow_big(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent > 0) b *= b;
  }
  return result;
}

std::string to_string(const BigInt& value) { return value.str(); }

}  // namespace axent
