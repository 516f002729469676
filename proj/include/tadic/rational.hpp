#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace tadic {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline std::int64_t floor(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }
inline std::int64_t ceil(const Rational& r) { return ceil_div(r.numerator(), r.denominator()); }

}  // namespace tadic
