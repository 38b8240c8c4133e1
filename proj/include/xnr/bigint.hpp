#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace xnr {

using BigInt = boost::multiprecision::cpp_int;

/// base^exp over unbounded integers.
inline BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return result;
}

/// Narrowing conversion that throws std::overflow_error when the value does
/// not fit (or is negative).
std::uint64_t to_u64(const BigInt& v);

/// True iff v is p^k for some k >= 0.
bool is_power_of(const BigInt& v, std::uint32_t p);

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace xnr
