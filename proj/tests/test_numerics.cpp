// SPDX-License-Identifier: Apache-2.0
#include "lcomp/reals.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace lcomp;
using lcomp::testing::R;

TEST_CASE("rationals are kept in lowest terms") {
    const Rational q(6, -8);
    CHECK(q.numerator() == -3);
    CHECK(q.denominator() == 4);
    CHECK(Rational::parse("10/4") == R(5, 2));
    CHECK(Rational::parse("-7") == R(-7));
    CHECK(Rational::pow2(-3) == R(1, 8));
    CHECK(Rational::pow2(4) == R(16));
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
    CHECK(json(R(3, 7)).get<std::string>() == "3/7");
    CHECK(json("3/7").get<Rational>() == R(3, 7));
}

TEST_CASE("sqrt enclosures contain the bisection reference") {
    for (long s : {2L, 3L, 5L, 10L}) {
        const auto [lo, hi] = testing::sqrt_bisect(s, 40);
        for (unsigned n : {0u, 4u, 12u, 30u}) {
            const SqrtEnclosure e = sqrt_enclosure(s, n);
            CHECK(e.hi - e.lo <= Rational::pow2(-static_cast<long>(n)));
            CHECK(e.lo <= hi);
            CHECK(lo <= e.hi);
        }
    }
    const SqrtEnclosure e = sqrt_enclosure(R(9, 4), 5);
    CHECK(e.exact());
    CHECK(e.lo == R(3, 2));
}

TEST_CASE("upper real addition") {
    const auto s = ur_add(UpperRealApprox::constant(R(1, 2)), UpperRealApprox::constant(R(1, 3)));
    for (unsigned n = 0; n < 10; ++n) CHECK(s.query(n) >= Bound(R(5, 6)));
    CHECK(s.query(3) == Bound(R(5, 6)));

    const auto u = DedekindRealApprox::sqrt(2).forget_lower();
    const auto z = ur_add(UpperRealApprox::constant(0), u);
    for (unsigned n = 0; n < 12; ++n) CHECK(z.query(n) == u.query(n));

    const auto inf = ur_add(UpperRealApprox::infinite(), UpperRealApprox::constant(1));
    for (unsigned n = 0; n < 5; ++n) CHECK(inf.query(n).is_pos_inf());
}

TEST_CASE("upper real strict comparison") {
    CHECK(ur_lt(UpperRealApprox::constant(R(1, 2)), 1, 0).is_proved());
    CHECK(ur_lt(UpperRealApprox::constant(1), 1, 8).is_refuted());

    // Distance from (0,0) to (1,1) against 1415/1000.
    const auto d = DedekindRealApprox::sqrt(2).forget_lower();
    CHECK(ur_lt(d, R(1415, 1000), 2).is_unknown());
    const Judgment late = ur_lt(d, R(1415, 1000), 20);
    REQUIRE(late.is_proved());
    // The reference value is below the bound, so Proved is consistent.
    CHECK(testing::sqrt_bisect(2, 30).second < R(1415, 1000));
    // Plain upper reals never refute.
    CHECK_FALSE(ur_lt(d, R(1414, 1000), 30).is_refuted());
}

TEST_CASE("upper real sup") {
    CHECK(ur_sup(UpperRealApprox::constant(R(1, 2)), UpperRealApprox::constant(R(1, 3))).query(0) == Bound(R(1, 2)));
    const auto u = DedekindRealApprox::sqrt(3).forget_lower();
    const auto uu = ur_sup(u, u);
    for (unsigned n = 0; n < 12; ++n) CHECK(uu.query(n) == u.query(n));
    CHECK(ur_sup(UpperRealApprox::constant(0), UpperRealApprox::infinite()).query(4).is_pos_inf());
}

TEST_CASE("exact sums and sups are exact") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Rational a = testing::random_rational(rng, 20, 0, 5), b = testing::random_rational(rng, 20, 0, 5);
        const auto ua = UpperRealApprox::constant(a), ub = UpperRealApprox::constant(b);
        CHECK(ur_add(ua, ub).query(7) == Bound(a + b));
        CHECK(ur_sup(ua, ub).query(7) == Bound(max(a, b)));
    }
}

TEST_CASE("queries are nonincreasing") {
    std::mt19937 rng(12);
    for (int i = 0; i < 1000; ++i) {
        const long bump = std::uniform_int_distribution<long>(1, 9)(rng);
        const long s = std::uniform_int_distribution<long>(0, 50)(rng);
        // Raw bounds that wiggle upward on odd indices.
        const auto raw = UpperRealApprox::from_query([s, bump](unsigned n) {
            const SqrtEnclosure e = sqrt_enclosure(s, n);
            return Bound(n % 2 ? e.hi + Rational(bump, 3) : e.hi);
        });
        const auto sum = ur_add(raw, DedekindRealApprox::sqrt(s + 1).forget_lower());
        for (unsigned n = 0; n < 20; ++n) {
            CHECK(raw.query(n + 1) <= raw.query(n));
            CHECK(sum.query(n + 1) <= sum.query(n));
        }
    }
}

TEST_CASE("refutation and proof never coexist") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        const Rational v = testing::random_rational(rng, 12, 0, 3), q = testing::random_positive(rng, 12, 3);
        const auto u = UpperRealApprox::constant(v);
        bool proved = false, refuted = false;
        for (unsigned b = 0; b < 6; ++b) {
            const Judgment j = ur_lt(u, q, b);
            proved = proved || j.is_proved();
            refuted = refuted || j.is_refuted();
        }
        CHECK_FALSE((proved && refuted));
        CHECK(proved == (v < q));
    }
}

TEST_CASE("dedekind comparison") {
    const auto half = DedekindRealApprox::constant(R(1, 2));
    CHECK(dr_compare(half, DedekindRealApprox::constant(R(3, 4)), R(1, 100), 8) == Comparison::Less);
    const auto s2 = DedekindRealApprox::sqrt(2);
    CHECK(dr_compare(s2, s2, R(1, 100), 16) == Comparison::Within);
    CHECK(dr_compare(s2, DedekindRealApprox::constant(R(141, 100)), R(1, 1000), 20) == Comparison::Greater);
    CHECK(dr_lt(s2, R(3, 2), 10).is_proved());
    CHECK(dr_lt(s2, R(7, 5), 10).is_refuted());
}

TEST_CASE("forgetting the lower cut keeps the upper cut") {
    const auto x = DedekindRealApprox::sqrt(7);
    const auto u = x.forget_lower();
    for (unsigned n = 0; n < 16; ++n) CHECK(u.query(n) == x.upper(n));
}

TEST_CASE("bounds with infinities") {
    CHECK((Bound::pos_inf() + Bound(3)).is_pos_inf());
    CHECK(Bound::neg_inf() < Bound(-1000));
    CHECK(Bound(2) < Bound::pos_inf());
    CHECK((Bound(R(1, 2)) - R(1, 4)) == Bound(R(1, 4)));
}
