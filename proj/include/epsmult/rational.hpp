#ifndef EPSMULT_RATIONAL_HPP
#define EPSMULT_RATIONAL_HPP

#include "error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

namespace epsmult {

using BigInt = boost::multiprecision::cpp_int;
/// Expression templates off so values compose freely in ?: and auto.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i)
    f *= i;
  return f;
}

inline BigInt int_pow(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i)
    r *= base;
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i)
    r *= base;
  return r;
}

/// Smallest integer >= r.
inline BigInt ceil_of(const Rational& r) {
  BigInt q = numerator_of(r) / denominator_of(r); // truncates toward zero
  if (q * denominator_of(r) != numerator_of(r) && r > 0)
    q += 1;
  return q;
}

/// Largest integer <= r.
inline BigInt floor_of(const Rational& r) {
  BigInt q = numerator_of(r) / denominator_of(r);
  if (q * denominator_of(r) != numerator_of(r) && r < 0)
    q -= 1;
  return q;
}

/// "p/q" or "p"; whitespace around the parts is ignored.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) -> BigInt {
    s = trim(s);
    if (s.empty())
      throw IngestionError("empty integer in rational '" + std::string(text) + "'");
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size())
      throw IngestionError("malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw IngestionError("malformed rational '" + std::string(text) + "'");
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0)
    throw IngestionError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

/// Renders numerator/denominator, always with an explicit denominator.
inline std::string to_fraction_string(const Rational& r) {
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Decimal rendering rounded half away from zero to `places` digits; the
/// printed value is within 10^-places / 2 of the exact rational.
inline std::string to_decimal_string(const Rational& r, unsigned places = 12) {
  const bool negative = r < 0;
  Rational a = negative ? Rational(-r) : r;
  BigInt scale = int_pow(BigInt(10), places);
  Rational scaled = a * scale + Rational(1, 2);
  BigInt q = floor_of(scaled);
  std::string digits = q.str();
  if (digits.size() <= places)
    digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0)
    out += "." + digits.substr(digits.size() - places);
  if (negative && q != 0)
    out.insert(0, "-");
  return out;
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

} // namespace epsmult

#endif
