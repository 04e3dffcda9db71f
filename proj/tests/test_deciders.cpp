// SPDX-License-Identifier: Apache-2.0
#include "lcomp/deciders.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace lcomp;
using lcomp::testing::R;

namespace {

// Open (p,q) ⊆ ⋃ u for open intervals. The uncovered part, if any, contains a
// member endpoint or a point between two consecutive breakpoints.
bool pointwise_cover(const Interval& t, const std::vector<Interval>& u) {
    std::vector<Rational> cuts{t.first, t.second};
    for (const auto& [a, b] : u) {
        if (t.first < a && a < t.second) cuts.push_back(a);
        if (t.first < b && b < t.second) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> probes;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (i > 0) probes.push_back(cuts[i]);
        if (cuts[i] < cuts[i + 1]) probes.push_back(mid(cuts[i], cuts[i + 1]));
    }
    for (const Rational& x : probes) {
        bool in = false;
        for (const auto& [a, b] : u) in = in || (a < x && x < b);
        if (!in) return false;
    }
    return true;
}

Interval random_interval(std::mt19937& rng) {
    Rational a = testing::random_rational(rng, 6, -2, 2), b = testing::random_rational(rng, 6, -2, 2);
    while (a == b) b = testing::random_rational(rng, 6, -2, 2);
    return a < b ? Interval{a, b} : Interval{b, a};
}

const MetricId abs_m{"abs"};

}  // namespace

TEST_CASE("interval covers") {
    const Interval t{0, 1};
    const auto yes = decide_interval_cover(t, {{R(-1), R(1, 2)}, {R(1, 3), R(2)}});
    CHECK(yes.verdict == Verdict::Proved);
    const auto gap = decide_interval_cover(t, {{R(-1), R(1, 2)}, {R(1, 2), R(2)}});
    REQUIRE(gap.verdict == Verdict::Refuted);
    CHECK(*gap.witness == R(1, 2));
    // Members may overshoot the target freely.
    CHECK(decide_interval_cover(t, {{R(-5), R(5)}}).verdict == Verdict::Proved);
    CHECK(decide_interval_cover(t, {}).verdict == Verdict::Refuted);
    CHECK_THROWS_AS(decide_interval_cover({1, 1}, {}), MalformedInterval);
    CHECK_THROWS_AS(decide_interval_cover({2, 1}, {}), MalformedInterval);
}

TEST_CASE("interval covers agree with the pointwise reference") {
    std::mt19937 rng(41);
    for (int i = 0; i < 500; ++i) {
        const Interval t = random_interval(rng);
        std::vector<Interval> u;
        const int k = static_cast<int>(rng() % 5);
        for (int j = 0; j < k; ++j) u.push_back(random_interval(rng));
        const auto d = decide_interval_cover(t, u);
        CHECK((d.verdict == Verdict::Proved) == pointwise_cover(t, u));
        if (d.verdict == Verdict::Refuted) {
            REQUIRE(d.witness);
            CHECK(t.first < *d.witness);
            CHECK(*d.witness < t.second);
            for (const auto& [a, b] : u) CHECK_FALSE((a < *d.witness && *d.witness < b));
        }
        if (d.verdict == Verdict::Proved) {
            const Interval shrink{t.first + (t.second - t.first) / 8, t.second - (t.second - t.first) / 8};
            CHECK(verify_chain(chain_for_shrink(d.certificate, u, shrink), u, shrink));
        }
    }
}

TEST_CASE("chain oracle examples") {
    CHECK(chain_oracle({0, 1}, {{R(-1), R(1, 2)}, {R(1, 4), R(2)}}, 4));
    CHECK_FALSE(chain_oracle({0, 1}, {{R(-1), R(1, 2)}, {R(1, 2), R(2)}}, 2));
    CHECK(chain_oracle({0, 1}, {{R(0), R(1)}}, 1));
}

TEST_CASE("the formal reals plugin replays") {
    const auto fr = formal_reals();
    const Subset<Interval> u = Subset<Interval>::of({{R(-1), R(1, 2)}, {R(1, 3), R(2)}});
    const auto j = cover_check(fr, Interval{0, 1}, u, 4);
    REQUIRE(j.is_proved());
    CHECK(replay(fr, *j.trace, u, 4).is_proved());
    CHECK(cover_check(fr, Interval{0, 1}, Subset<Interval>::of({{R(-1), R(1, 2)}}), 4).is_refuted());
}

TEST_CASE("locally compact ball covers") {
    const Gus q = rational_line();
    const Ball a{abs_m, {0}, 2};
    const Subset<Ball> halves = Subset<Ball>::of({Ball{abs_m, {-1}, R(3, 2)}, Ball{abs_m, {1}, R(3, 2)}});
    const auto j = semidecide_lc_cover(q, a, halves, 8);
    REQUIRE(j.is_proved());
    if (j.trace->rule == Rule::Plugin) CHECK(verify_lc_certificate(q, a, halves, j.trace->certificate));

    const auto r = semidecide_lc_cover(q, a, Subset<Ball>::of({Ball{abs_m, {0}, 1}}), 8);
    REQUIRE(r.is_refuted());
    const Rational x = parse_point(r.witness->description["point"])[0];
    CHECK(x.abs() < 2);
    CHECK(x.abs() >= 1);

    // Disk of radius 3 inside two overlapping disks of radius 5.
    const Gus e = rational_box(2, {"euclid"});
    const MetricId m{"euclid"};
    const Ball d{m, {0, 0}, 3};
    const Subset<Ball> two = Subset<Ball>::of({Ball{m, {-4, 0}, 5}, Ball{m, {4, 0}, 5}});
    const auto dj = semidecide_lc_cover(e, d, two, 12);
    REQUIRE(dj.is_proved());
    if (dj.trace->rule == Rule::Plugin) CHECK(verify_lc_certificate(e, d, two, dj.trace->certificate));
    // Tampering with the members breaks the certificate.
    if (dj.trace->rule == Rule::Plugin)
        CHECK_FALSE(verify_lc_certificate(e, d, Subset<Ball>::of({Ball{m, {-4, 0}, 5}}), dj.trace->certificate));
}

TEST_CASE("verdicts are stable as the budget grows") {
    const Gus i = unit_interval();
    std::mt19937 rng(42);
    for (int n = 0; n < 40; ++n) {
        const Ball a{abs_m, {testing::random_rational(rng, 4, 0, 1)}, testing::random_positive(rng, 4, 1)};
        std::vector<Ball> u;
        for (int k = 0; k < 3; ++k)
            u.push_back(Ball{abs_m, {testing::random_rational(rng, 4, 0, 1)}, testing::random_positive(rng, 4, 1)});
        Verdict seen = Verdict::Unknown;
        for (std::size_t b = 1; b <= 6; ++b) {
            const Verdict v = semidecide_lc_cover(i, a, Subset<Ball>::of(u), b).verdict;
            if (seen != Verdict::Unknown) CHECK(v == seen);
            if (v != Verdict::Unknown) seen = v;
        }
    }
}

TEST_CASE("finite subcovers of the unit interval") {
    const Gus i = unit_interval();
    std::vector<Ball> u;
    for (long k = 0; k <= 4; ++k) u.push_back(Ball{abs_m, {R(k, 4)}, R(1, 6)});
    const SubcoverResult s = finite_subcover(i, Subset<Ball>::of(u), 8);
    REQUIRE(s.verdict == Verdict::Proved);
    for (const Ball& b : s.u0) CHECK(std::find(u.begin(), u.end(), b) != u.end());
    std::vector<std::pair<Rational, Rational>> parts;
    for (const Ball& b : s.u0) parts.emplace_back(b.center[0] - b.radius, b.center[0] + b.radius);
    CHECK(testing::open_union_covers(parts, 0, 1));

    // Radius 1/8 leaves gaps between the quarters.
    std::vector<Ball> thin;
    for (long k = 0; k <= 4; ++k) thin.push_back(Ball{abs_m, {R(k, 4)}, R(1, 8)});
    const SubcoverResult t = finite_subcover(i, Subset<Ball>::of(thin), 8);
    REQUIRE(t.verdict == Verdict::Refuted);
    REQUIRE(t.witness);
    for (const Ball& b : thin) CHECK(((*t.witness)[0] - b.center[0]).abs() >= b.radius);

    CHECK_THROWS_AS(finite_subcover(rational_line(), Subset<Ball>::of(u), 4), NotTotallyBounded);
}
