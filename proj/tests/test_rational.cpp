#include <doctest.h>

#include "herbrand/rational.hpp"

using namespace herbrand;

TEST_CASE("make_rational canonicalizes sign and common factors") {
  const Rational q = make_rational(6, -4);
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(make_rational(0, 5) == 0);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("fraction strings always show the denominator") {
  CHECK(to_fraction_string(make_rational(14, 3)) == "14/3");
  CHECK(to_fraction_string(Rational(5)) == "5/1");
  CHECK(to_fraction_string(make_rational(-1, 2)) == "-1/2");
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("44/9") == make_rational(44, 9));
  CHECK(parse_rational("-7") == -7);
  CHECK(parse_rational("10/4") == make_rational(5, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("decimal rendering") {
  CHECK(to_decimal_string(make_rational(1, 3)) == "0.33333333333333333333");
  CHECK(to_decimal_string(Rational(5)) == "5");
  CHECK(to_decimal_string(make_rational(-1, 4)) == "-0.25");
}

TEST_CASE("integer helpers") {
  CHECK(is_integer(make_rational(6, 3)));
  CHECK_FALSE(is_integer(make_rational(7, 3)));
  CHECK(to_int64(Integer(-42)) == -42);
  CHECK_THROWS_AS(to_int64(Integer("100000000000000000000000")), std::overflow_error);
  CHECK(ipow(3, 4) == 81);
  CHECK(ipow(7, 0) == 1);
}
