#include <cstdint>
#include <limits>
#include <random>

#include "doctest.h"
#include "monotile/error.hpp"
#include "monotile/rational.hpp"

using namespace monotile;

namespace {

Fraction as_fraction(std::int64_t n, std::int64_t d) {
  Fraction q(Integer(static_cast<long>(n)), Integer(static_cast<long>(d)));
  q.canonicalize();
  return q;
}

}  // namespace

TEST_CASE("parse and print") {
  CHECK(Rational::parse("3/4").str() == "3/4");
  CHECK(Rational::parse("6/8").str() == "3/4");
  CHECK(Rational::parse("-5").str() == "-5");
  CHECK(Rational::parse(" 0 ").str() == "0");
  CHECK(parse_fraction("0.125") == Fraction(1, 8));
  CHECK(parse_fraction("-1.5") == Fraction(-3, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(parse_integer(""), Error);
}

TEST_CASE("small values agree with GMP") {
  std::mt19937_64                           rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 60);
  for (int i = 0; i < 2000; ++i) {
    auto an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
    Rational a(an, ad), b(bn, bd);
    Fraction A = as_fraction(an, ad), B = as_fraction(bn, bd);
    CHECK(Rational(Fraction(A + B)) == a + b);
    CHECK(Rational(Fraction(A - B)) == a - b);
    CHECK(Rational(Fraction(A * B)) == a * b);
    if (bn != 0) {
      CHECK(Rational(Fraction(A / B)) == a / b);
    }
    CHECK(((A < B) == (a < b)));
    CHECK(((A == B) == (a == b)));
  }
}

TEST_CASE("overflow promotes to big values") {
  std::int64_t const big = std::numeric_limits<std::int64_t>::max();
  Rational           a(big);
  auto               s = a + a;
  CHECK(s.to_fraction() == Fraction(Integer(2) * Integer(static_cast<long>(big))));
  CHECK(!s.is_small());
  auto back = s - a;
  CHECK(back == a);
  CHECK(back.is_small());
  Rational m(std::numeric_limits<std::int64_t>::min());
  CHECK(m.to_fraction() == Fraction(Integer(static_cast<long>(std::numeric_limits<std::int64_t>::min()))));
  CHECK((-m).to_fraction() == -m.to_fraction());
  CHECK(m < Rational(0));
  Rational q(1, big);
  CHECK((q * q).to_fraction() == Fraction(1) / Fraction(Integer(static_cast<long>(big)) * Integer(static_cast<long>(big))));
}

TEST_CASE("floor, abs, sign and hashing") {
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(7, 2).floor() == Rational(3));
  CHECK(Rational(-7, 2).abs() == Rational(7, 2));
  CHECK(Rational(-1, 3).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(2, 4).hash() == Rational(1, 2).hash());
  CHECK(Rational(6, 3).is_integer());
}
