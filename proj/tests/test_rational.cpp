#include "errors.hpp"
#include "rational.hpp"

#include <doctest.h>

using namespace chronosynth;

TEST_CASE("parse and print") {
  CHECK(to_string(parse_rational("3/2")) == "3/2");
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-1/3")) == "-1/3");
  CHECK(to_string(parse_rational("0.25")) == "1/4");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK(to_string(parse_rational(" 10/5 ")) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ParseError);
}

TEST_CASE("floor division and modulus") {
  CHECK(floor_div(Rational(7, 2), Rational(1)) == 3);
  CHECK(floor_div(Rational(-1, 2), Rational(1)) == -1);
  CHECK(floor_div(Rational(3), Rational(3, 2)) == 2);
  CHECK(rmod(Rational(7, 2), Rational(1)) == Rational(1, 2));
  CHECK(rmod(Rational(-1, 2), Rational(2)) == Rational(3, 2));
}

TEST_CASE("rational lcm is the least common multiple") {
  auto l = rlcm(Rational(2, 3), Rational(1, 2));
  CHECK(l == Rational(2));
  // brute force over multiples
  for (int n1 = 1; n1 <= 6; ++n1)
    for (int d1 = 1; d1 <= 6; ++d1)
      for (int n2 = 1; n2 <= 6; ++n2)
        for (int d2 = 1; d2 <= 6; ++d2) {
          Rational a(n1, d1), b(n2, d2);
          Rational m = rlcm(a, b);
          CHECK(is_integer(m / a));
          CHECK(is_integer(m / b));
          for (int k = 1; Rational(k) * a < m; ++k)
            CHECK_FALSE(is_integer(Rational(k) * a / b));
        }
}

TEST_CASE("powers of one half") {
  CHECK(pow2_neg(0) == 1);
  CHECK(pow2_neg(3) == Rational(1, 8));
  Rational sum = 0;
  for (unsigned i = 0; i < 40; ++i)
    sum += pow2_neg(i);
  CHECK(sum < 2);
  CHECK(2 - sum == pow2_neg(39));
}
