#include "doctest.h"
#include "mqsym/error.hpp"
#include "mqsym/rational.hpp"

using namespace mqsym;

TEST_SUITE("rational") {
  TEST_CASE("parse integers, decimals, exponents and fractions") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-7") == -7);
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1.5e2") == 150);
    CHECK(parse_rational("25e-2") == Rational(1, 4));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("-1/3") == Rational(-1, 3));
  }

  TEST_CASE("malformed numbers") {
    for (const char* bad : {"", "-", "1/0", "1.2.3", "abc", "1/x", "1e", "."}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_rational(bad), Error);
    }
  }

  TEST_CASE("doubles convert through their shortest decimal form") {
    CHECK(rational_from_double(0.1) == Rational(1, 10));
    CHECK(rational_from_double(-2.5) == Rational(-5, 2));
    CHECK(rational_from_double(1e-3) == Rational(1, 1000));
  }

  TEST_CASE("complex rational arithmetic") {
    const ComplexRational a{Rational(1, 2), Rational(-3)};
    const ComplexRational b{Rational(2), Rational(1)};
    CHECK(a * b == ComplexRational{Rational(4), Rational(-11, 2)});
    CHECK(a + b == ComplexRational{Rational(5, 2), Rational(-2)});
    CHECK(a.conj().conj() == a);
    CHECK(ComplexRational::i() * ComplexRational::i() == ComplexRational(-1));
    CHECK((a - a).is_zero());
  }

  TEST_CASE("rendering") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(ComplexRational(-2)) == "-2");
    CHECK(to_string(ComplexRational{Rational(0), Rational(2)}) == "2i");
    CHECK(to_string(ComplexRational{Rational(1, 2), Rational(-3)}) == "(1/2-3i)");
  }
}
