#include <doctest.h>

#include "qjac/errors.hpp"
#include "qjac/injectivity.hpp"

using namespace qjac;

TEST_CASE("squarefree")
{
    CHECK(is_squarefree(1));
    CHECK(is_squarefree(6));
    CHECK(is_squarefree(10));
    CHECK(!is_squarefree(4));
    CHECK(!is_squarefree(18));
    CHECK_THROWS_AS(is_squarefree(0), InvalidInput);
}

TEST_CASE("case input validation")
{
    CHECK_THROWS_AS(CaseInput(4, 7, 1), InvalidInput);
    CHECK_THROWS_AS(CaseInput(1, 7, 1), InvalidInput);
    CHECK_THROWS_AS(CaseInput(3, 2, 1), InvalidInput);
    CHECK_THROWS_AS(CaseInput(3, 7, 0), InvalidInput);
}

TEST_CASE("classifier examples")
{
    const auto a = classify(CaseInput(3, 7, 10));
    CHECK(a.part_i);
    CHECK(a.part_ii);
    CHECK(!a.part_iii);
    CHECK(a.s == 0);
    CHECK(a.r == 4);
    CHECK(a.window_ok);

    const auto b = classify(CaseInput(3, 5, 1));
    CHECK(!b.part_i);
    CHECK(b.part_ii);
    CHECK(b.part_iii);
    CHECK(b.s == 0);
    CHECK(b.r == 0);
    CHECK(b.beta == 18);
    CHECK(b.lambda == 36);
    CHECK(b.window_ok);

    const auto c = classify(CaseInput(5, 6, 1));
    CHECK(!c.any());
    CHECK(c.discrepancy_flags.size() == 1);

    const auto d = classify(CaseInput(3, 9, 1), 6);
    CHECK(d.r == 6);
    CHECK(d.s == 1);
    CHECK_THROWS_AS(classify(CaseInput(3, 9, 1), 2), InvalidInput);
    CHECK_THROWS_AS(classify(CaseInput(3, 9, 1), 10), InvalidInput);
}

TEST_CASE("window examples")
{
    const auto a = window_check(3, 7, 0, 4);
    CHECK(a.holds());
    CHECK(a.choice_ok);
    CHECK(a.upper == ratio(58, 7));
    CHECK(a.lower == ratio(25, 7));

    const auto b = window_check(3, 5, 0, 0);
    CHECK(b.holds());
    CHECK(b.choice_ok);

    const auto c = window_check(3, 4, 0, 0);
    CHECK(c.applicable);
    CHECK(!c.choice_ok);

    CHECK(!window_check(1, 3, 0, 0).applicable);
}

TEST_CASE("nonintegrality")
{
    const auto five = nonintegrality_check(5);
    CHECK(!five.is_integer);
    CHECK(five.value == ratio(84, 5));
    const auto six = nonintegrality_check(6);
    CHECK(six.is_integer);
    CHECK(six.value == 30);
    CHECK(six.discrepancy);
    CHECK(nonintegrality_check(7).value == ratio(330, 7));
    CHECK_THROWS_AS(nonintegrality_check(3), InvalidInput);
    for (int m = 4; m <= 300; ++m)
        CHECK(nonintegrality_check(m).is_integer == (m == 6));
}

TEST_CASE("congruences")
{
    const auto a = congruence_check(TheoremPart::ii, 3, 5);
    CHECK(a.total == 13);
    CHECK(a.residue == 1);
    CHECK(a.holds);
    const auto b = congruence_check(TheoremPart::ii, 3, 9);
    CHECK(b.total == 25);
    CHECK(b.holds);
    const auto c = congruence_check(TheoremPart::iii, 3, 9);
    CHECK(c.residue == 1);
    CHECK(c.holds);
    CHECK_THROWS_AS(congruence_check(TheoremPart::ii, 3, 4), InvalidInput);
    CHECK_THROWS_AS(congruence_check(TheoremPart::ii, 3, 6), ParityError);
    for (int m = 5; m <= 99; m += 2)
        for (int k = 3; k + 2 <= m; k += 2) {
            CHECK(congruence_check(TheoremPart::ii, k, m).holds);
            CHECK(congruence_check(TheoremPart::iii, k, m).holds);
        }
}

TEST_CASE("classifier grid applies the hypotheses literally")
{
    for (int k = 3; k <= 21; k += 2)
        for (int m = k + 1; m <= k + 20; ++m)
            for (long N : {1L, 6L, 4L}) {
                const auto v = classify(CaseInput(k, m, N));
                const bool odd = m % 2 != 0;
                CHECK(v.part_i == (m - k >= 4));
                CHECK(v.part_ii == (odd && m - k >= 2 && N != 4));
                CHECK(v.part_iii == (odd && m - k >= 2 && N == 1));
                if (v.any())
                    CHECK(v.window_ok);
            }
}
