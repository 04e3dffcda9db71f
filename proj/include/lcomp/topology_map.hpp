// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/formal_topology.hpp"

#include <string>
#include <type_traits>
#include <vector>

namespace lcomp {

// Relation r ⊆ S × S'. `relates` is sound: Proved means a r b.
template <class E1, class E2>
struct TopologyMap {
    std::string name;
    std::function<Verdict(const E1&, const E2&, std::size_t budget)> relates;
    // Candidates b with a r b, used by composition and point transport.
    std::function<std::vector<E2>(const E1&, std::size_t budget)> image;
    // Candidates a with a r b, used when the source base is infinite.
    std::function<std::vector<E1>(const E2&, std::size_t budget)> fiber;
    // Members of r⁻b that help cover `anchor`.
    std::function<std::vector<E1>(const E1& anchor, const E2&, std::size_t budget)> fiber_near;

    bool holds(const E1& a, const E2& b, std::size_t budget) const { return relates(a, b, budget) == Verdict::Proved; }
};

// Relation given by its graph over finite bases.
template <class E1, class E2>
TopologyMap<E1, E2> finite_map(std::string name, std::vector<std::pair<E1, E2>> graph) {
    auto g = std::make_shared<const std::vector<std::pair<E1, E2>>>(std::move(graph));
    TopologyMap<E1, E2> r;
    r.name = std::move(name);
    r.relates = [g](const E1& a, const E2& b, std::size_t) {
        for (const auto& [x, y] : *g)
            if (x == a && y == b) return Verdict::Proved;
        return Verdict::Refuted;
    };
    r.image = [g](const E1& a, std::size_t) {
        std::vector<E2> out;
        for (const auto& [x, y] : *g)
            if (x == a) out.push_back(y);
        return out;
    };
    r.fiber = [g](const E2& b, std::size_t) {
        std::vector<E1> out;
        for (const auto& [x, y] : *g)
            if (y == b) out.push_back(x);
        return out;
    };
    return r;
}

template <class E>
TopologyMap<E, E> identity_map(const FormalTopology<E>& t) {
    TopologyMap<E, E> r;
    r.name = "id(" + t.name + ")";
    r.relates = [](const E& a, const E& b, std::size_t) { return a == b ? Verdict::Proved : Verdict::Refuted; };
    r.image = [](const E& a, std::size_t) { return std::vector<E>{a}; };
    r.fiber = [](const E& b, std::size_t) { return std::vector<E>{b}; };
    return r;
}

// r⁻U as a subset of the source.
template <class E1, class E2>
Subset<E1> preimage(const TopologyMap<E1, E2>& r, const Subset<E2>& u, std::size_t budget) {
    Subset<E1> s;
    s.contains = [r, u, budget](const E1& a) {
        if (u.finite) {
            for (const E2& b : u.members(budget))
                if (r.holds(a, b, budget)) return true;
            return false;
        }
        if (r.image)
            for (const E2& b : r.image(a, budget))
                if (u.contains(b) && r.holds(a, b, budget)) return true;
        return false;
    };
    s.enumerate = [r, u](std::size_t k) {
        std::vector<E1> out;
        if (!r.fiber) return out;
        for (const E2& b : u.members(k))
            for (const E1& a : r.fiber(b, k))
                if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        return out;
    };
    s.finite = false;
    s.near = [r, u](const E1& anchor, std::size_t k) {
        std::vector<E1> out;
        std::vector<E2> bs;
        // Same-base maps can ask u for members near the anchor itself.
        if constexpr (std::is_same_v<E1, E2>)
            bs = u.candidates_near(anchor, k);
        else
            bs = u.members(k);
        for (const E2& b : bs) {
            std::vector<E1> cands;
            if (r.fiber_near) cands = r.fiber_near(anchor, b, k);
            else if (r.fiber) cands = r.fiber(b, k);
            for (const E1& a : cands)
                if (std::find(out.begin(), out.end(), a) == out.end() && r.holds(a, b, k)) out.push_back(a);
        }
        return out;
    };
    return s;
}

template <class E1, class E2>
Subset<E1> preimage(const TopologyMap<E1, E2>& r, const E2& b, std::size_t budget) {
    return preimage(r, Subset<E2>::of({b}), budget);
}

// s ∘ r: a (s∘r) c iff some b has a r b and b s c. The middle base is
// scanned when finite, otherwise r's image candidates are used.
template <class E1, class E2, class E3>
TopologyMap<E1, E3> map_compose(const TopologyMap<E1, E2>& r, const TopologyMap<E2, E3>& s,
                                 const Base<E2>& middle = Base<E2>{}) {
    TopologyMap<E1, E3> out;
    out.name = s.name + "∘" + r.name;
    out.relates = [r, s, middle](const E1& a, const E3& c, std::size_t k) {
        const std::vector<E2> bs = middle.finite() ? *middle.elements : (r.image ? r.image(a, k) : std::vector<E2>{});
        for (const E2& b : bs)
            if (r.holds(a, b, k) && s.holds(b, c, k)) return Verdict::Proved;
        return middle.finite() ? Verdict::Refuted : Verdict::Unknown;
    };
    out.image = [r, s](const E1& a, std::size_t k) {
        std::vector<E3> cs;
        if (!r.image || !s.image) return cs;
        for (const E2& b : r.image(a, k))
            for (const E3& c : s.image(b, k))
                if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
        return cs;
    };
    out.fiber = [r, s](const E3& c, std::size_t k) {
        std::vector<E1> as;
        if (!r.fiber || !s.fiber) return as;
        for (const E2& b : s.fiber(c, k))
            for (const E1& a : r.fiber(b, k))
                if (std::find(as.begin(), as.end(), a) == as.end()) as.push_back(a);
        return as;
    };
    if (r.fiber_near || s.fiber_near) {
        out.fiber_near = [r, s](const E1& anchor, const E3& c, std::size_t k) {
            std::vector<E1> as;
            std::vector<E2> bs = s.fiber ? s.fiber(c, k) : std::vector<E2>{};
            for (const E2& b : bs) {
                std::vector<E1> xs = r.fiber_near ? r.fiber_near(anchor, b, k) : r.fiber(b, k);
                for (const E1& a : xs)
                    if (std::find(as.begin(), as.end(), a) == as.end()) as.push_back(a);
            }
            return as;
        };
    }
    return out;
}

namespace detail {

template <class E1, class E2>
std::vector<E1> fiber_of(const TopologyMap<E1, E2>& r, const FormalTopology<E1>& s, const E2& b, std::size_t k) {
    std::vector<E1> out;
    if (s.base.finite()) {
        for (const E1& a : *s.base.elements)
            if (r.holds(a, b, k)) out.push_back(a);
    } else if (r.fiber) {
        for (const E1& a : r.fiber(b, k))
            if (r.holds(a, b, k)) out.push_back(a);
    }
    return out;
}

// Every member of `as` covered by u; exact on finite bases.
template <class E>
Judgment covered_all(const FormalTopology<E>& s, const std::vector<E>& as, const Subset<E>& u,
                     std::size_t budget, const char* label) {
    if (s.base.finite()) {
        const Saturation<E> sat = saturate_finite(s, u);
        for (const E& a : as)
            if (!sat.contains(a)) return Judgment::refuted(label, {{"element", a}});
        return Judgment::proved();
    }
    for (const E& a : as) {
        const CoverJudgment<E> j = cover_check(s, a, u, budget);
        if (j.is_refuted()) return Judgment::refuted(label, {{"element", a}});
        if (!j.is_proved()) return Judgment::unknown(std::string(label) + " undecided", budget);
    }
    return Judgment::proved();
}

}  // namespace detail

// r ≤ s iff r⁻b ◁ s⁻b for every b of the target.
template <class E1, class E2>
Judgment map_leq(const TopologyMap<E1, E2>& r, const TopologyMap<E1, E2>& s, const FormalTopology<E1>& src,
                 const FormalTopology<E2>& dst, std::size_t budget) {
    std::size_t checked = 0;
    bool incomplete = false;
    for (const E2& b : dst.base.sample(budget)) {
        const auto as = detail::fiber_of(r, src, b, budget);
        Judgment j = detail::covered_all(src, as, preimage(s, b, budget), budget, "r⁻b not covered by s⁻b");
        if (j.is_refuted()) {
            j.evidence["target"] = b;
            return j;
        }
        incomplete = incomplete || j.is_unknown();
        checked += as.size();
    }
    if (incomplete) return Judgment::unknown("some fibers undecided", budget);
    return Judgment::proved(src.base.finite() && dst.base.finite() ? "all elements" : "sampled elements",
                            {{"checked", checked}});
}

template <class E1, class E2>
Judgment map_equal(const TopologyMap<E1, E2>& r, const TopologyMap<E1, E2>& s, const FormalTopology<E1>& src,
                   const FormalTopology<E2>& dst, std::size_t budget) {
    Judgment a = map_leq(r, s, src, dst, budget);
    if (!a.is_proved()) return a;
    Judgment b = map_leq(s, r, src, dst, budget);
    if (!b.is_proved()) return b;
    return Judgment::proved(a.note, {{"checked", a.evidence["checked"].template get<std::size_t>() +
                                                     b.evidence["checked"].template get<std::size_t>()}});
}

// Totality, meets, order and axiom preservation, on sampled elements.
template <class E1, class E2>
Judgment check_ftm(const TopologyMap<E1, E2>& r, const FormalTopology<E1>& s, const FormalTopology<E2>& s2,
                   std::size_t budget) {
    const std::vector<E2> targets = s2.base.sample(budget);
    const std::vector<E1> sources = s.base.sample(budget);
    bool incomplete = false;
    auto note = [&](Judgment j, const char* tag) -> std::optional<Judgment> {
        if (j.is_refuted()) {
            j.note = std::string(tag) + ": " + j.note;
            return j;
        }
        incomplete = incomplete || j.is_unknown();
        return std::nullopt;
    };

    const Subset<E2> all = s2.base.finite() ? Subset<E2>::of(targets) : Subset<E2>::where([](const E2&) { return true; },
                                                                                           [targets](std::size_t) { return targets; });
    if (auto bad = note(detail::covered_all(s, sources, preimage(r, all, budget), budget, "S not covered"), "total"))
        return *bad;

    for (const E2& a : targets) {
        const auto ra = detail::fiber_of(r, s, a, budget);
        for (const E2& b : targets) {
            const auto rb = detail::fiber_of(r, s, b, budget);
            std::vector<E1> meet;
            for (const E1& c : sources) {
                bool below_a = false, below_b = false;
                for (const E1& x : ra) below_a = below_a || s.leq(c, x);
                for (const E1& y : rb) below_b = below_b || s.leq(c, y);
                if (below_a && below_b) meet.push_back(c);
            }
            std::vector<E2> ab;
            for (const E2& c : targets)
                if (s2.leq(c, a) && s2.leq(c, b)) ab.push_back(c);
            Subset<E2> down = Subset<E2>::of(ab);
            if (!s2.base.finite()) {
                // a↓b itself; sampled members plus the topology's own meets.
                if (s2.meets)
                    for (const E2& c : s2.meets(a, b))
                        if (std::find(ab.begin(), ab.end(), c) == ab.end()) ab.push_back(c);
                down = Subset<E2>::where([s2, a, b](const E2& c) { return s2.leq(c, a) && s2.leq(c, b); },
                                         [ab](std::size_t) { return ab; });
            }
            if (auto bad = note(detail::covered_all(s, meet, preimage(r, down, budget), budget,
                                                    "meet not covered"),
                                "meets")) {
                bad->evidence["a"] = a;
                bad->evidence["b"] = b;
                return *bad;
            }
            if (s2.leq(a, b))
                if (auto bad = note(detail::covered_all(s, ra, preimage(r, b, budget), budget, "order not preserved"),
                                    "order"))
                    return *bad;
        }
        for (const AxiomIndex& i : s2.axioms.indices(a, budget)) {
            const Subset<E2> body = s2.axioms.body(a, i);
            if (auto bad = note(detail::covered_all(s, ra, preimage(r, body, budget), budget, "axiom not preserved"),
                                "axioms")) {
                bad->evidence["index"] = i;
                return *bad;
            }
        }
    }
    if (incomplete) return Judgment::unknown("some instances undecided", budget);
    return Judgment::proved(s.base.finite() && s2.base.finite() ? "all instances" : "sampled instances");
}

}  // namespace lcomp
