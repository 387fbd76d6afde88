#include <doctest.h>

#include <rectsurf/rational.hpp>

using rectsurf::Rational;

TEST_CASE("construction normalizes") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, -7) == Rational(0));
    CHECK(Rational(0, 5).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("comparisons avoid overflow") {
    Rational big(INT64_MAX / 2, 3);
    Rational small(1, 3);
    CHECK(small < big);
    CHECK(big > small);
    CHECK(Rational(-1, 3) < Rational(1, 4));
    CHECK(Rational(1, 3) <= Rational(1, 3));
}

TEST_CASE("overflow detection") {
    Rational huge(INT64_MAX, 1);
    CHECK_THROWS_AS(huge * huge, std::overflow_error);
    CHECK_THROWS_AS(huge + huge, std::overflow_error);
    // intermediate products above int64 are fine when the result reduces
    Rational a(INT64_MAX / 3, 2);
    CHECK(a + a == Rational(INT64_MAX / 3));
}

TEST_CASE("parse and str round trip") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK_THROWS_AS(Rational::parse("x/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("floor and mod1") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-3).floor() == -3);
    CHECK(Rational(7, 2).mod1() == Rational(1, 2));
    CHECK(Rational(-1, 4).mod1() == Rational(3, 4));
    CHECK(Rational(2).mod1() == Rational(0));
}

TEST_CASE("to_double") {
    CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
    CHECK(Rational(-1, 3).to_double() == doctest::Approx(-1.0 / 3.0));
}
