#include "gmas/rational.hpp"

#include <doctest.h>

using namespace gmas;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("12") == Rational(12));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("2.5E2") == Rational(250));
    CHECK(parse_rational("+7") == Rational(7));
}

TEST_CASE("parse_rational rejects garbage") {
    CHECK_THROWS_AS(parse_rational(""), RationalParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), RationalParseError);
    CHECK_THROWS_AS(parse_rational("abc"), RationalParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), RationalParseError);
    CHECK_THROWS_AS(parse_rational("1.2.3"), RationalParseError);
}

TEST_CASE("canonical form survives arithmetic") {
    Rational a(2, 6);
    Rational b = a + Rational(1, 6);
    CHECK(to_string(b) == "1/2");
    CHECK(to_string(Rational(4) / 2) == "2");
    CHECK(to_string(Rational(-3) / 9) == "-1/3");
    CHECK(b.get_den() == 2);
}

TEST_CASE("vector helpers") {
    RationalVector a{Rational(1, 2), Rational(-1), Rational(0)};
    RationalVector b{Rational(2), Rational(3), Rational(5)};
    CHECK(dot(a, b) == Rational(-2));
    CHECK_FALSE(is_zero(a));
    CHECK(is_zero(RationalVector(3)));
    CHECK(sign(Rational(-1, 7)) == -1);
    CHECK(to_double(a)[0] == doctest::Approx(0.5));
}
