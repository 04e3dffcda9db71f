// SPDX-License-Identifier: Apache-2.0
#include "lcomp/completion.hpp"
#include "lcomp/deciders.hpp"
#include "lcomp/finite_topology.hpp"
#include "lcomp/image_topology.hpp"
#include "lcomp/maps.hpp"
#include "lcomp/products.hpp"
#include "lcomp/theory.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace lcomp;
using lcomp::testing::R;
using S = std::string;

namespace {

FormalTopology<S> finite(const char* doc) { return make_finite_topology(parse_finite_topology(json::parse(doc))); }

std::set<S> saturated(const FormalTopology<S>& t, std::vector<S> u) {
    const auto sat = saturate_finite(t, Subset<S>::of(std::move(u)));
    const auto ms = sat.members();
    return {ms.begin(), ms.end()};
}

// Whole-pass iteration of the general rules over any finite base.
template <class E>
std::set<E> naive_closure(const FormalTopology<E>& t, const std::vector<E>& u) {
    const std::vector<E>& base = *t.base.elements;
    std::set<E> a(u.begin(), u.end());
    for (bool changed = true; changed;) {
        changed = false;
        std::set<E> next = a;
        for (const E& x : base)
            for (const E& y : a)
                if (t.leq(x, y)) next.insert(x);
        for (const E& b : base)
            for (const AxiomIndex& i : t.axioms.indices(b, 0)) {
                const std::vector<E> body = t.axioms.body(b, i).members(0);
                for (const E& x : base) {
                    if (!t.leq(x, b)) continue;
                    bool all = true;
                    for (const E& c : base) {
                        if (!t.leq(c, x)) continue;
                        bool below = false;
                        for (const E& m : body) below = below || t.leq(c, m);
                        if (below && !a.count(c)) all = false;
                    }
                    if (all) next.insert(x);
                }
            }
        if (next != a) {
            a = std::move(next);
            changed = true;
        }
    }
    return a;
}

struct RandomTopology {
    FiniteTopologySpec spec;
    FormalTopology<S> t;
};

RandomTopology random_topology(std::mt19937& rng) {
    RandomTopology r;
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    for (std::size_t i = 0; i < n; ++i) r.spec.base.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && std::bernoulli_distribution(0.2)(rng)) r.spec.order.emplace_back(r.spec.base[i], r.spec.base[j]);
    const int k = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < k; ++i) {
        FiniteAxiom ax{r.spec.base[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)], "i" + std::to_string(i), {}};
        for (const S& c : r.spec.base)
            if (std::bernoulli_distribution(0.35)(rng)) ax.cover.push_back(c);
        r.spec.axioms.push_back(ax);
    }
    r.t = make_finite_topology(r.spec);
    return r;
}

std::vector<S> random_subset(std::mt19937& rng, const std::vector<S>& base) {
    std::vector<S> u;
    for (const S& c : base)
        if (std::bernoulli_distribution(0.3)(rng)) u.push_back(c);
    return u;
}

}  // namespace

TEST_CASE("saturation follows axioms and the order") {
    const auto chain = finite(R"({"base":["a","b","c"],"axioms":[
        {"element":"a","index":"0","cover":["b"]},{"element":"b","index":"0","cover":["c"]}]})");
    CHECK(saturated(chain, {"c"}) == std::set<S>{"a", "b", "c"});
    CHECK(saturated(chain, {"c"}) == naive_closure(chain, {"c"}));

    const auto ordered = finite(R"({"base":["a","b"],"order":[["a","b"]]})");
    CHECK(saturated(ordered, {"b"}) == std::set<S>{"a", "b"});
    CHECK(saturated(ordered, {"a"}) == std::set<S>{"a"});
}

TEST_CASE("saturation is extensive, idempotent and monotone") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const RandomTopology r = random_topology(rng);
        const std::vector<S> u = random_subset(rng, r.spec.base);
        std::vector<S> v = u;
        for (const S& c : random_subset(rng, r.spec.base)) v.push_back(c);
        const std::set<S> su = saturated(r.t, u);
        for (const S& x : u) CHECK(su.count(x) == 1);
        CHECK(saturated(r.t, {su.begin(), su.end()}) == su);
        const std::set<S> sv = saturated(r.t, v);
        CHECK(std::includes(sv.begin(), sv.end(), su.begin(), su.end()));
        CHECK(su == naive_closure(r.t, u));
        if (r.t.axioms.localised) {
            const auto a = saturate_finite(r.t, Subset<S>::of(u), SaturationMode::Infinity).members();
            const auto b = saturate_finite(r.t, Subset<S>::of(u), SaturationMode::LeqInfinity).members();
            CHECK(std::set<S>(a.begin(), a.end()) == std::set<S>(b.begin(), b.end()));
        }
    }
}

TEST_CASE("cover verdicts never conflict across budgets") {
    std::mt19937 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const RandomTopology r = random_topology(rng);
        const Subset<S> u = Subset<S>::of(random_subset(rng, r.spec.base));
        for (const S& a : r.spec.base) {
            bool proved = false, refuted = false;
            for (std::size_t b : {0u, 2u, 8u}) {
                const auto j = cover_check(r.t, a, u, b);
                proved = proved || j.is_proved();
                refuted = refuted || j.is_refuted();
                if (j.is_proved()) CHECK(replay(r.t, *j.trace, u, b).is_proved());
                if (j.is_refuted()) {
                    CHECK(check_point(r.t, j.witness->alpha, 8).is_proved());
                    CHECK(j.witness->alpha.contains(a));
                    for (const S& x : u.members(0)) CHECK_FALSE(j.witness->alpha.contains(x));
                }
            }
            CHECK_FALSE((proved && refuted));
        }
    }
}

TEST_CASE("a tampered trace does not replay") {
    const auto t = finite(R"({"base":["a","b","c"],"axioms":[{"element":"a","index":"0","cover":["b"]}]})");
    const Subset<S> u = Subset<S>::of({"b"});
    auto j = cover_check(t, S("a"), u, 4);
    REQUIRE(j.is_proved());
    CHECK(replay(t, *j.trace, u, 4).is_proved());
    Trace<S> bad = *j.trace;
    bad.element = "c";
    CHECK_FALSE(replay(t, bad, u, 4).is_proved());
}

TEST_CASE("finite topology documents") {
    CHECK_THROWS_AS(parse_finite_topology(json::parse(R"({"base":"a"})")), ParseError);
    CHECK_THROWS_AS(parse_finite_topology(json::parse(R"({"base":["a"],"order":[["a","zz"]]})")), ParseError);
    const auto spec = parse_finite_topology(json::parse(R"({"name":"t","base":["p","q"],"order":[["p","q"]],
        "axioms":[{"element":"q","index":"k","cover":["p"]}]})"));
    CHECK(spec.name == "t");
    CHECK(spec.axioms.size() == 1);
    CHECK(is_localised_finite(make_finite_topology(spec)) == make_finite_topology(spec).axioms.localised);
}

TEST_CASE("formal reals plugin") {
    const auto fr = formal_reals();
    const auto p = cover_check(fr, Interval{0, 1}, Subset<Interval>::of({{-1, R(3, 5)}, {R(2, 5), 2}}), 4);
    REQUIRE(p.is_proved());
    CHECK(p.trace->rule == Rule::Plugin);
    CHECK(replay(fr, *p.trace, Subset<Interval>::of({{-1, R(3, 5)}, {R(2, 5), 2}}), 4).is_proved());
    const auto u = Subset<Interval>::of({{-1, 1}, {1, 3}});
    const auto r = cover_check(fr, Interval{0, 2}, u, 4);
    REQUIRE(r.is_refuted());
    // The point filter of 1 contains (0,2) and misses both members.
    CHECK(r.witness->alpha.contains(Interval{0, 2}));
    CHECK_FALSE(r.witness->alpha.contains(Interval{-1, 1}));
    CHECK_FALSE(r.witness->alpha.contains(Interval{1, 3}));
    CHECK(r.witness->description.dump().find("1") != std::string::npos);
    CHECK(cover_check(fr, Interval{0, 1}, Subset<Interval>::of({{0, 1}}), 0).is_proved());
}

TEST_CASE("formal points") {
    const auto t = finite(R"({"base":["a","b"]})");
    CHECK(check_point(t, Subset<S>::of({"a"}), 4).is_proved());
    CHECK(check_point(t, Subset<S>::empty(), 4).is_refuted());
    // Not upward closed: b ≥ a is missing.
    const auto o = finite(R"({"base":["a","b"],"order":[["a","b"]]})");
    CHECK(check_point(o, Subset<S>::of({"a"}), 4).is_refuted());
    CHECK(check_point(o, Subset<S>::of({"a", "b"}), 4).is_proved());

    // The model {q | q > 1/2} of the upper-real theory, as a point.
    const auto ut = topology_of_theory(upper_real_theory());
    const Subset<Rational> model = Subset<Rational>::where([](const Rational& q) { return q > R(1, 2); },
                                                           [](std::size_t k) {
                                                               std::vector<Rational> out;
                                                               for (const Rational& q : positive_rationals(k))
                                                                   if (q > R(1, 2)) out.push_back(q);
                                                               return out;
                                                           });
    CHECK(check_point(ut, model_point_bridge(model), 3).is_proved());
}

TEST_CASE("splitting subsets") {
    const auto t = finite(R"({"base":["a","b"],"axioms":[{"element":"a","index":"0","cover":["b"]}]})");
    CHECK(check_splitting(t, Subset<S>::empty(), 4).is_proved());
    CHECK(check_splitting(t, Subset<S>::of({"a"}), 4).is_refuted());
    // a↓{b} is empty, so a ◁ ∅ and no subset holding a splits.
    CHECK(check_splitting(t, Subset<S>::of({"a", "b"}), 4).is_refuted());
    CHECK(check_splitting(t, Subset<S>::of({"b"}), 4).is_proved());

    const auto ct = completion_topology(rational_line());
    CHECK(check_splitting(ct.topology, *ct.topology.positivity, 2).is_proved());
}

TEST_CASE("weakly closed subtopologies") {
    const auto t = finite(R"({"base":["a","b","c"],"order":[["a","b"],["a","c"]],
        "axioms":[{"element":"c","index":"0","cover":["a"]}]})");
    const auto full = weakly_closed(t, Subset<S>::of({"a", "b", "c"}));
    std::mt19937 rng(9);
    for (int i = 0; i < 20; ++i) {
        const std::vector<S> u = random_subset(rng, {"a", "b", "c"});
        CHECK(saturated(full, u) == saturated(t, u));
    }
    CHECK_THROWS_AS(weakly_closed(finite(R"({"base":["a","b"],"axioms":[{"element":"a","index":"0","cover":["b"]}]})"),
                                  Subset<S>::of({"a"})),
                    NotSplitting);

    // Points of t_V are exactly the points of t contained in V.
    const Subset<S> v = Subset<S>::of({"b"});
    const auto tv = weakly_closed(t, v);
    REQUIRE(tv.positivity);
    const std::vector<S> base{"a", "b", "c"};
    for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<S> alpha;
        for (unsigned k = 0; k < 3; ++k)
            if (mask >> k & 1) alpha.push_back(base[k]);
        const bool in_v = std::all_of(alpha.begin(), alpha.end(), [&](const S& x) { return v.contains(x); });
        const bool point_t = check_point(t, Subset<S>::of(alpha), 4).is_proved();
        CHECK(check_point(tv, Subset<S>::of(alpha), 4).is_proved() == (point_t && in_v));
    }

    // The formal unit interval: intervals missing [0,1] are covered by nothing.
    const Subset<Interval> pos = Subset<Interval>::where([](const Interval& a) { return a.first < 1 && 0 < a.second; });
    const auto unit = weakly_closed(formal_reals(), pos);
    CHECK(cover_check(unit, Interval{R(3, 2), 2}, Subset<Interval>::empty(), 4).is_proved());
    CHECK_FALSE(cover_check(unit, Interval{R(1, 2), 2}, Subset<Interval>::empty(), 4).is_proved());
}

TEST_CASE("topology maps") {
    const auto t = finite(R"({"base":["a","b","c"],"order":[["a","b"]]})");
    CHECK(check_ftm(identity_map(t), t, t, 4).is_proved());
    CHECK(check_ftm(finite_map<S, S>("empty", {}), t, t, 4).is_refuted());
    CHECK(map_equal(identity_map(t), identity_map(t), t, t, 4).is_proved());

    const auto d = finite(R"({"base":["p","q"]})");
    const auto to_p = finite_map<S, S>("p", {{"a", "p"}, {"b", "p"}, {"c", "p"}});
    const auto to_q = finite_map<S, S>("q", {{"a", "q"}, {"b", "q"}, {"c", "q"}});
    const Judgment ne = map_equal(to_p, to_q, t, d, 4);
    CHECK(ne.is_refuted());
    CHECK(ne.evidence.contains("target"));

    // Composition with the identity changes nothing.
    CHECK(map_equal(map_compose(identity_map(t), to_p, t.base), to_p, t, d, 4).is_proved());
}

TEST_CASE("identity of a completion is a formal topology map") {
    const Gus q = rational_line();
    const auto ct = completion_topology(q);
    // Covering an open ball by strict shrinks needs the limit rule, which the
    // bounded search does not reach; the check may stay Unknown but never fails.
    CHECK_FALSE(check_ftm(completion_identity(q), ct.topology, ct.topology, 1).is_refuted());
}

TEST_CASE("binary products and pullbacks") {
    const auto s = finite(R"({"base":["a","b"],"order":[["a","b"]]})");
    const auto t = finite(R"({"base":["x","y"]})");
    const auto p = binary_product(s, t);
    CHECK(check_ftm(p.first, p.topology, s, 4).is_proved());
    CHECK(check_ftm(p.second, p.topology, t, 4).is_proved());

    // p₁ ∘ ⟨r, r'⟩ = r
    const auto src = finite(R"({"base":["u","v"]})");
    const auto r = finite_map<S, S>("r", {{"u", "a"}, {"u", "b"}, {"v", "b"}});
    const auto r2 = finite_map<S, S>("r2", {{"u", "x"}, {"v", "y"}});
    const auto med = pairing(src, r, r2);
    CHECK(map_equal(map_compose(med, p.first, p.topology.base), r, src, s, 4).is_proved());
    CHECK(map_equal(map_compose(med, p.second, p.topology.base), r2, src, t, 4).is_proved());

    const auto pb = pullback_product(s, t, finite_map<S, S>("f", {{"a", "x"}, {"b", "x"}}), identity_map(t));
    // (a, y) ◁ S × s⁻x, which has only x in the second slot.
    const std::pair<S, S> ay{"a", "y"};
    CHECK(covers_finite(pb.topology, ay, Subset<std::pair<S, S>>::empty()));
}

TEST_CASE("family products") {
    const auto a = finite(R"({"base":["a0","a1"]})");
    const auto b = finite(R"({"base":["a0","a1"]})");
    const auto fp = family_product(std::vector<FormalTopology<S>>{a, b});
    using A = FinSum<S>;
    // Two distinct elements of a discrete part meet in nothing.
    const A clash{{0, "a0"}, {0, "a1"}};
    CHECK(covers_finite(fp.topology, clash, Subset<A>::empty()));
    const A mixed{{0, "a0"}, {1, "a1"}};
    CHECK(covers_finite(fp.topology, mixed, Subset<A>::of({A{{0, "a0"}}})));
    CHECK_FALSE(covers_finite(fp.topology, mixed, Subset<A>::of({A{{0, "a1"}}})));
    for (const auto& u : std::vector<std::vector<A>>{{A{{0, "a0"}}}, {clash}, {A{{1, "a1"}}, A{{0, "a1"}}}}) {
        const auto sat = saturate_finite(fp.topology, Subset<A>::of(u)).members();
        CHECK(std::set<A>(sat.begin(), sat.end()) == naive_closure(fp.topology, u));
    }
    for (const auto& proj : fp.projections) CHECK(check_ftm(proj, fp.topology, a, 4).is_proved());
}

TEST_CASE("geometric theories") {
    const auto empty = topology_of_theory(GeometricTheory<S>::finite("empty", {"g"}, {}));
    const auto sat = saturate_finite(empty, Subset<Fin<S>>::of({Fin<S>{"g"}})).members();
    CHECK(std::set<Fin<S>>(sat.begin(), sat.end()) == std::set<Fin<S>>{Fin<S>{"g"}});

    // q ⊢ ⋁_{q'<q} q'
    const auto th = upper_real_theory();
    const auto ut = topology_of_theory(th);
    bool found = false;
    for (const AxiomIndex& i : ut.axioms.indices(Fin<Rational>{1}, 4)) {
        const auto body = ut.axioms.body(Fin<Rational>{1}, i);
        if (body.contains(Fin<Rational>{1, R(1, 2)})) found = true;
    }
    CHECK(found);

    const Subset<S> m = Subset<S>::of({"g", "h"});
    const Subset<S> back = point_model_bridge(model_point_bridge(m));
    for (const S& x : {"g", "h", "k"}) CHECK(back.contains(x) == m.contains(x));
}

TEST_CASE("image topologies") {
    const auto t = finite(R"({"base":["a","b","c"],"order":[["a","b"],["a","c"]],
        "axioms":[{"element":"c","index":"0","cover":["a"]}]})");
    const auto img = image_topology(identity_map(t), t, t);
    std::mt19937 rng(3);
    for (int i = 0; i < 20; ++i) {
        const std::vector<S> u = random_subset(rng, {"a", "b", "c"});
        for (const S& x : {"a", "b", "c"})
            CHECK(cover_check(img, x, Subset<S>::of(u), 4).is_proved() == covers_finite(t, x, Subset<S>::of(u)));
    }

    const auto tv = weakly_closed(t, Subset<S>::of({"b"}));
    const auto to = finite(R"({"base":["p","q","r"]})");
    const auto r = finite_map<S, S>("r", {{"b", "p"}, {"c", "q"}});
    const auto im = image_topology(r, tv, to);
    REQUIRE(im.positivity);
    CHECK(im.positivity->contains("p"));
    CHECK_FALSE(im.positivity->contains("q"));
    CHECK_FALSE(im.positivity->contains("r"));

    CHECK(embedding_check(identity_map(tv), tv, t).is_proved());
}
