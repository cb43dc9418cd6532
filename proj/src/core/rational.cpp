#include "rational.hpp"

#include "errors.hpp"

#include <cctype>

namespace chronosynth {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

} // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0)
      throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      scale *= 10;
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    value = Rational(w * scale + Integer(std::string(frac)), scale);
  } else {
    if (!all_digits(s))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    value = Rational(Integer(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  if (den == 1)
    return num.str();
  return num.str() + "/" + den.str();
}

Integer floor_div(const Rational& num, const Rational& den) {
  Rational q = num / den;
  Integer n = boost::multiprecision::numerator(q);
  Integer d = boost::multiprecision::denominator(q);
  Integer f = n / d;
  if (n < 0 && f * d != n)
    f -= 1;
  return f;
}

Rational rmod(const Rational& r, const Rational& m) {
  return r - Rational(floor_div(r, m)) * m;
}

Rational rlcm(const Rational& a, const Rational& b) {
  // lcm(p1/q1, p2/q2) = lcm(p1, p2) / gcd(q1, q2)
  Integer p1 = boost::multiprecision::numerator(a);
  Integer q1 = boost::multiprecision::denominator(a);
  Integer p2 = boost::multiprecision::numerator(b);
  Integer q2 = boost::multiprecision::denominator(b);
  return Rational(boost::multiprecision::lcm(p1, p2),
                  boost::multiprecision::gcd(q1, q2));
}

bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

Rational pow2_neg(unsigned i) {
  Integer d = 1;
  d <<= i;
  return Rational(Integer(1), d);
}

} // namespace chronosynth
