// SPDX-License-Identifier: Apache-2.0
#include "lcomp/completion.hpp"
#include "lcomp/maps.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace lcomp;
using lcomp::testing::R;

namespace {

const MetricId abs_m{"abs"};

Ball ball(const Rational& c, const Rational& r) { return Ball{abs_m, {c}, r}; }

// Reference for balls on ℚ: a <_X b iff |c_a − c_b| + r_a < r_b.
bool strictly_below(const Ball& a, const Ball& b) {
    return (a.center[0] - b.center[0]).abs() + a.radius < b.radius;
}

}  // namespace

TEST_CASE("the positive balls split") {
    const auto ct = completion_topology(rational_line());
    REQUIRE(ct.topology.positivity);
    CHECK(check_splitting(ct.topology, *ct.topology.positivity, 2).is_proved());
}

TEST_CASE("ball enumerations are strictly below their ball") {
    const Gus q = rational_line();
    std::mt19937 rng(31);
    for (int i = 0; i < 40; ++i) {
        const Ball a = ball(testing::random_rational(rng, 6, -3, 3), testing::random_positive(rng, 6, 2));
        for (const Ball& b : wb_enumerate(q, a, 2)) CHECK(strictly_below(b, a));
        const auto rc = rc_enumerate(a, 3);
        CHECK(rc.size() == 4);
        for (std::size_t j = 0; j < rc.size(); ++j) {
            CHECK(rc[j].center == a.center);
            CHECK(rc[j].radius == a.radius * (1 - Rational::pow2(-static_cast<long>(j) - 1)));
        }
        CHECK(wb_subset(q, a).contains(rc.front()));
        CHECK_FALSE(wb_subset(q, a).contains(a));
        CHECK(rc_subset(q, a).contains(rc.back()));
    }
}

TEST_CASE("completion covers on the line") {
    const Gus q = rational_line();
    const Ball a = ball(0, 2);
    // Two overlapping halves.
    const auto two = completion_cover(q, a, Subset<Ball>::of({ball(-1, R(3, 2)), ball(1, R(3, 2))}), 8);
    REQUIRE(two.is_proved());
    CHECK(verify_completion_cover(q, a, Subset<Ball>::of({ball(-1, R(3, 2)), ball(1, R(3, 2))}),
                                  two.trace->certificate));

    const auto miss = completion_cover(q, a, Subset<Ball>::of({ball(0, 1)}), 8);
    REQUIRE(miss.is_refuted());
    REQUIRE(miss.witness);
    // The witness filter is a point of a that lies outside b(0,1).
    CHECK(miss.witness->alpha.contains(a));
    CHECK_FALSE(miss.witness->alpha.contains(ball(0, 1)));
    const Rational x = parse_point(miss.witness->description["point"])[0];
    CHECK(x.abs() < 2);
    CHECK(x.abs() >= 1);

    // Shrinks cover their ball.
    CHECK(completion_cover(q, a, wb_subset(q, a), 4).is_proved());
    CHECK(completion_cover(q, a, rc_subset(q, a), 4).is_proved());
}

TEST_CASE("truncated completions agree in both axiom forms") {
    const Gus q = rational_line();
    std::vector<Ball> balls;
    for (long c = -2; c <= 2; ++c)
        for (const Rational& r : {R(1, 2), R(1), R(2)}) balls.push_back(ball(R(c, 2), r));
    const auto plain = truncated_completion(q, balls, false);
    const auto loc = truncated_completion(q, balls, true);
    std::mt19937 rng(32);
    for (int i = 0; i < 30; ++i) {
        std::vector<Ball> u;
        for (const Ball& b : balls)
            if (rng() % 4 == 0) u.push_back(b);
        const auto s1 = saturate_finite(plain, Subset<Ball>::of(u)).members();
        const auto s2 = saturate_finite(loc, Subset<Ball>::of(u)).members();
        CHECK(std::set<Ball>(s1.begin(), s1.end()) == std::set<Ball>(s2.begin(), s2.end()));
    }
}

TEST_CASE("point filters") {
    const Gus q = rational_line();
    const auto f = point_filter(q, {R(1, 3)});
    CHECK(f.contains(ball(0, R(1, 2))));
    CHECK_FALSE(f.contains(ball(0, R(1, 3))));
    CHECK(f.contains(ball(1, R(3, 4))));
}

TEST_CASE("uniform refinement between families") {
    const Gus q = rational_line();
    CHECK(sq_below(q, {ball(0, 1)}, {ball(0, 2)}, 6).is_proved());
    CHECK(sq_below(q, {ball(0, 1)}, {ball(0, 1)}, 6).is_proved());
    CHECK(sq_below(q, {ball(0, 2)}, {ball(-1, R(3, 2)), ball(1, R(3, 2))}, 8).is_proved());
    CHECK_FALSE(sq_below(q, {ball(0, 2)}, {ball(0, 1)}, 8).is_proved());
}

TEST_CASE("common points of mixed-metric balls") {
    const Gus g = rational_box(2, {"sup", "euclid"});
    const MetricId e{"euclid"}, s{"sup"};
    const Ball a{e, {0, 0}, R(1, 2)}, b{s, {R(1, 2), 0}, R(1, 2)};
    const Judgment j = w_member(g, {{e, a}, {s, b}}, 6);
    REQUIRE(j.is_proved());
    const Point p = parse_point(j.evidence["point"]);
    CHECK(p[0] * p[0] + p[1] * p[1] < R(1, 4));
    CHECK((p[0] - R(1, 2)).abs() < R(1, 2));
    CHECK(p[1].abs() < R(1, 2));

    const Ball far{s, {3, 0}, R(1, 2)};
    CHECK(w_member(g, {{e, a}, {s, far}}, 6).is_refuted());
}

TEST_CASE("maps from functions") {
    const Gus q = rational_line();
    const auto ct = completion_topology(q);
    FunctionData shift;
    shift.f = [](const Point& x) { return Point{x[0] + 1}; };
    shift.image_box = [](const Ball& a) {
        return std::optional<Cell>(Cell{{a.center[0] - a.radius + 1}, {a.center[0] + a.radius + 1}});
    };
    const BallMap hom = map_of_function(shift, q, q, MapMode::Hom);
    CHECK(hom.relates(ball(0, 1), ball(1, 2), 8) == Verdict::Proved);
    CHECK(hom.relates(ball(0, 1), ball(1, 1), 8) == Verdict::Refuted);
    const BallMap cont = map_of_function(shift, q, q, MapMode::Continuous);
    CHECK(cont.relates(ball(0, 1), ball(1, 2), 8) == Verdict::Proved);
    CHECK(map_equal(hom, cont, ct.topology, ct.topology, 2).is_proved());

    // x² on [0,1]: the image of [0,1/2) is [0,1/4].
    const Gus i = unit_interval();
    FunctionData square;
    square.f = [](const Point& x) { return Point{x[0] * x[0]}; };
    square.image_box = [](const Ball& a) -> std::optional<Cell> {
        const Rational lo = max(a.center[0] - a.radius, Rational(0)), hi = min(a.center[0] + a.radius, Rational(1));
        return Cell{{lo * lo}, {hi * hi}};
    };
    const BallMap sq = map_of_function(square, i, i, MapMode::Continuous);
    CHECK(sq.relates(ball(0, R(1, 2)), ball(0, R(1, 2)), 8) == Verdict::Proved);
    CHECK(sq.relates(ball(1, R(1, 2)), ball(0, R(1, 2)), 8) != Verdict::Proved);

    FunctionData bare;
    bare.f = shift.f;
    CHECK_THROWS_AS(map_of_function(bare, q, q, MapMode::Continuous), NoModulus);
}

TEST_CASE("product iso on a small sample") {
    const Gus q = rational_line();
    const ProductIso iso = product_iso_witnesses(q, q);
    CHECK(check_product_iso(iso, q, q, 6, 6).is_proved());
}
