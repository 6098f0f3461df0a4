#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace sdc {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt parse_decimal(const std::string& s) { return BigInt(s); }

}  // namespace sdc
