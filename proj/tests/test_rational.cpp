#include <doctest.h>

#include "cover14/rational.hpp"
#include "cover14/vec.hpp"

using namespace cover14;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(6, 3).str() == "2");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("exact arithmetic") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == 2);
  CHECK((a + a + a) == 1);
  CHECK(-a == Rational(-1, 3));
  CHECK(a.abs() == a);
  CHECK((-a).abs() == a);
}

TEST_CASE("ordering and signs") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) > Rational(-1, 2));
  CHECK(Rational(1, 3).sign() == 1);
  CHECK(Rational(-1, 3).sign() == -1);
  CHECK(Rational(0).sign() == 0);
}

TEST_CASE("parsing accepts n and n/d, rejects garbage") {
  CHECK(Rational::parse("7")->str() == "7");
  CHECK(Rational::parse("-3/9")->str() == "-1/3");
  CHECK(Rational::parse("4/-6")->str() == "-2/3");
  CHECK_FALSE(Rational::parse("1/0"));
  CHECK_FALSE(Rational::parse(""));
  CHECK_FALSE(Rational::parse("a/b"));
  CHECK_FALSE(Rational::parse("1.5"));
  CHECK_FALSE(Rational::parse("1/2/3"));
}

TEST_CASE("canonical parser demands the exact serialized field form") {
  CHECK(Rational::parse_canonical("1/2"));
  CHECK(Rational::parse_canonical("-1/2"));
  CHECK(Rational::parse_canonical("0/1"));
  CHECK_FALSE(Rational::parse_canonical("2/4"));   // not lowest terms
  CHECK_FALSE(Rational::parse_canonical("1/-2"));  // negative denominator
  CHECK_FALSE(Rational::parse_canonical("3"));     // missing denominator
  CHECK_FALSE(Rational::parse_canonical("+1/2"));  // non-canonical sign
  CHECK_FALSE(Rational::parse_canonical("1/0"));
}

TEST_CASE("slash form round-trips") {
  for (long n = -8; n <= 8; ++n) {
    for (long d = 1; d <= 8; ++d) {
      const Rational r(n, d);
      CHECK(*Rational::parse_canonical(r.str_slash()) == r);
    }
  }
}

TEST_CASE("floor for grid indexing") {
  CHECK(Rational(7, 2).floor_long() == 3);
  CHECK(Rational(-7, 2).floor_long() == -4);
  CHECK(Rational(4).floor_long() == 4);
  CHECK(Rational(0).floor_long() == 0);
}

TEST_CASE("big values stay exact") {
  Rational x(1, 3);
  for (int i = 0; i < 200; ++i) x *= Rational(10, 3);
  Rational y = x;
  for (int i = 0; i < 200; ++i) y /= Rational(10, 3);
  CHECK(y == Rational(1, 3));
}

TEST_CASE("vector algebra") {
  const Vec3 a{1, 2, 3}, b{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
  CHECK(a.dot(b) == Rational(1, 2) + Rational(2, 3) + Rational(1, 2));
  CHECK(a.cross(a).is_zero());
  const Vec3 e1{1, 0, 0}, e2{0, 1, 0};
  CHECK(e1.cross(e2) == Vec3{0, 0, 1});
  CHECK((a - a).is_zero());
  CHECK(a.l1_norm() == 6);
  CHECK(orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}) == 1);
  CHECK(orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, -1}) == -1);
  CHECK(orient3d({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}) == 0);
}
