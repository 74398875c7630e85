#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace lll {

/// Exact rational used for frequencies, degree masses and transport values.
using Rational = boost::rational<std::int64_t>;

/// Unbounded rational for sums whose denominators outgrow 64 bits, such as
/// mass-transport totals over many distinct transport values.
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational to_big(const Rational& q) { return BigRational(q.numerator(), q.denominator()); }

inline double to_double(const Rational& q) {
  return boost::rational_cast<double>(q);
}

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline std::string to_string(const BigRational& q) { return q.str(); }

}  // namespace lll
