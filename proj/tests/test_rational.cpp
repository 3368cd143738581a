#include <doctest.h>

#include "qjac/errors.hpp"
#include "qjac/rational.hpp"

using namespace qjac;

TEST_CASE("rational text form always carries a denominator")
{
    CHECK(to_string(Rational(3)) == "3/1");
    CHECK(to_string(ratio(-6, 4)) == "-3/2");
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("floor, ceil and frac")
{
    CHECK(floor(Rational(-7, 2)) == -4);
    CHECK(ceil(Rational(-7, 2)) == -3);
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(factorial(5) == 120);
    CHECK(lcm(4, 6) == 12);
}
