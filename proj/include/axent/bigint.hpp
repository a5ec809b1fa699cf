#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace axent {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of a nonnegative integer; -inf for zero. Accurate to a few ulps
// for arbitrarily large values.
double log_of(const BigInt& value);

BigInt pow_big(const BigInt& base, std::uint64_t exponent);

// Number of bits needed to hold `value` (0 for zero).
std::uint64_t bit_length(const BigInt& value);

std::string to_string(const BigInt& value);

}  // namespace axent
