#pragma once

#include <gmpxx.h>

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace netbound {

// Exact fraction. mpq_class keeps values canonical (lowest terms, q > 0)
// after every arithmetic operation.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Always "p/q", including integers ("1/1").
inline std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_decimal_string(const Rational& r, int digits = 6) {
  // Round half away from zero on the last digit.
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpq_class scaled = r * scale;
  mpz_class num = scaled.get_num();
  mpz_class den = scaled.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  mpz_class q = (2 * num + den) / (2 * den);
  std::string digits_str = q.get_str();
  if (static_cast<int>(digits_str.size()) <= digits)
    digits_str.insert(0, static_cast<std::size_t>(digits + 1) - digits_str.size(), '0');
  std::string out = digits_str.substr(0, digits_str.size() - digits);
  if (digits > 0) out += "." + digits_str.substr(digits_str.size() - digits);
  return (negative && q != 0 ? "-" : "") + out;
}

// Accepts "p/q" or an integer "p".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  mpz_class num, den = 1;
  try {
    if (slash == std::string::npos) {
      num = mpz_class(s, 10);
    } else {
      num = mpz_class(s.substr(0, slash), 10);
      den = mpz_class(s.substr(slash + 1), 10);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (den == 0) throw std::invalid_argument("rational with zero denominator '" + s + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace netbound
