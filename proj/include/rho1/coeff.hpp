#pragma once

// Coefficient rings used by the polynomial and matrix templates.
//
// Integer  arbitrary-precision integers, used by the elimination pipeline.
// Rational arbitrary-precision rationals, the public coefficient type.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace rho1 {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when an exact division leaves a remainder.
struct InexactDivision : std::domain_error {
  using std::domain_error::domain_error;
};

namespace coeff {

inline bool is_zero(const Integer& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

/// q = a / b, required to be exact.
inline Integer exact_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (!r.is_zero()) throw InexactDivision("integer division leaves a remainder");
  return q;
}
inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }

inline bool is_integral(const Integer&) { return true; }
inline bool is_integral(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline std::string to_string(const Integer& x) { return x.str(); }
inline std::string to_string(const Rational& x) {
  const auto& den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

/// Parses "p" or "p/q" (optionally signed).
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(Integer(std::string(s)));
    Integer num(std::string(s.substr(0, slash)));
    Integer den(std::string(s.substr(slash + 1)));
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + std::string(s));
  }
}

}  // namespace coeff
}  // namespace rho1
