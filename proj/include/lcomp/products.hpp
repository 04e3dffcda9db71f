// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/topology_map.hpp"

#include <set>
#include <utility>

namespace lcomp {

// Finite subsets of a tagged sum Σ_i S_i.
template <class E>
using FinSum = std::set<std::pair<std::size_t, E>>;

template <class E>
struct FamilyProduct {
    FormalTopology<FinSum<E>> topology;
    std::vector<TopologyMap<FinSum<E>, E>> projections;
};

inline constexpr std::size_t kMaxProductSummands = 12;

// Product of a family of topologies over finite bases (S1)-(S3).
template <class E>
FamilyProduct<E> family_product(const std::vector<FormalTopology<E>>& parts) {
    using A = FinSum<E>;
    std::vector<std::pair<std::size_t, E>> sum;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!parts[i].base.finite()) throw NonFiniteBase("product part '" + parts[i].name + "' is not finite");
        for (const E& a : *parts[i].base.elements) sum.emplace_back(i, a);
    }
    if (sum.size() > kMaxProductSummands) throw NonFiniteBase("product base too large to list");
    std::vector<A> elems;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sum.size()); ++mask) {
        A s;
        for (std::size_t k = 0; k < sum.size(); ++k)
            if (mask >> k & 1u) s.insert(sum[k]);
        elems.push_back(std::move(s));
    }
    auto ps = std::make_shared<const std::vector<FormalTopology<E>>>(parts);

    FamilyProduct<E> out;
    FormalTopology<A>& t = out.topology;
    t.name = "Π(";
    for (std::size_t i = 0; i < parts.size(); ++i) t.name += (i ? "," : "") + parts[i].name;
    t.name += ")";
    t.base = Base<A>::of(elems);
    t.leq = [ps](const A& x, const A& y) {
        for (const auto& [i, b] : y) {
            bool found = false;
            for (const auto& [j, a] : x) found = found || (i == j && (*ps)[i].leq(a, b));
            if (!found) return false;
        }
        return true;
    };
    t.axioms.localised = false;
    t.axioms.index = [ps](const A& x, std::size_t k) {
        std::vector<AxiomIndex> is;
        for (std::size_t i = 0; i < ps->size(); ++i) is.push_back({{"S1", i}});
        if (x.size() == 2 && x.begin()->first == std::next(x.begin())->first) is.push_back({{"S2", true}});
        if (x.size() == 1) {
            const auto& [i, a] = *x.begin();
            for (const AxiomIndex& j : (*ps)[i].axioms.indices(a, k)) is.push_back({{"S3", j}});
        }
        return is;
    };
    t.axioms.has_index = [ps, idx = t.axioms.index](const A& x, const AxiomIndex& i) {
        if (i.contains("S3") && x.size() == 1) {
            const auto& [p, a] = *x.begin();
            return (*ps)[p].axioms.valid(a, i["S3"], 64);
        }
        for (const auto& j : idx(x, 0))
            if (j == i) return true;
        return false;
    };
    t.axioms.body = [ps](const A& x, const AxiomIndex& idx) {
        std::vector<A> body;
        if (idx.contains("S1")) {
            const std::size_t i = idx["S1"].template get<std::size_t>();
            for (const E& a : *(*ps)[i].base.elements) body.push_back(A{{i, a}});
        } else if (idx.contains("S2")) {
            auto it = x.begin();
            const auto& [i, a] = *it++;
            const E& b = it->second;
            for (const E& c : *(*ps)[i].base.elements)
                if ((*ps)[i].leq(c, a) && (*ps)[i].leq(c, b)) body.push_back(A{{i, c}});
        } else if (idx.contains("S3")) {
            const auto& [i, a] = *x.begin();
            for (const E& c : (*ps)[i].axioms.body(a, idx["S3"]).members(0)) body.push_back(A{{i, c}});
        }
        return Subset<A>::of(std::move(body));
    };
    for (std::size_t i = 0; i < parts.size(); ++i) {
        TopologyMap<A, E> p;
        p.name = "p" + std::to_string(i);
        p.relates = [i](const A& x, const E& a, std::size_t) {
            return x.size() == 1 && x.begin()->first == i && x.begin()->second == a ? Verdict::Proved : Verdict::Refuted;
        };
        p.image = [i](const A& x, std::size_t) {
            if (x.size() == 1 && x.begin()->first == i) return std::vector<E>{x.begin()->second};
            return std::vector<E>{};
        };
        p.fiber = [i](const E& a, std::size_t) { return std::vector<A>{A{{i, a}}}; };
        out.projections.push_back(std::move(p));
    }
    return out;
}

// Mediating map into the family product: a r A iff a ◁ r_i⁻b for every (i,b) ∈ A.
template <class S, class E>
TopologyMap<S, FinSum<E>> family_pairing(const FormalTopology<S>& src, const std::vector<TopologyMap<S, E>>& rs) {
    TopologyMap<S, FinSum<E>> out;
    out.name = "⟨…⟩";
    out.relates = [src, rs](const S& a, const FinSum<E>& x, std::size_t k) {
        Verdict v = Verdict::Proved;
        for (const auto& [i, b] : x) {
            const Verdict w = cover_check(src, a, preimage(rs[i], b, k), k).verdict;
            if (w == Verdict::Refuted) return Verdict::Refuted;
            if (w == Verdict::Unknown) v = Verdict::Unknown;
        }
        return v;
    };
    return out;
}

template <class E1, class E2>
struct BinaryProduct {
    FormalTopology<std::pair<E1, E2>> topology;
    TopologyMap<std::pair<E1, E2>, E1> first;
    TopologyMap<std::pair<E1, E2>, E2> second;
};

namespace detail {

template <class E1, class E2>
FormalTopology<std::pair<E1, E2>> product_topology(const FormalTopology<E1>& s, const FormalTopology<E2>& t) {
    using P = std::pair<E1, E2>;
    FormalTopology<P> out;
    out.name = s.name + "×" + t.name;
    if (s.base.finite() && t.base.finite()) {
        std::vector<P> xs;
        for (const E1& a : *s.base.elements)
            for (const E2& b : *t.base.elements) xs.emplace_back(a, b);
        out.base = Base<P>::of(std::move(xs));
    } else {
        out.base = Base<P>::enumerated([s, t](std::size_t k) {
            std::vector<P> xs;
            for (const E1& a : s.base.sample(k))
                for (const E2& b : t.base.sample(k)) xs.emplace_back(a, b);
            return xs;
        });
    }
    out.leq = [s, t](const P& x, const P& y) { return s.leq(x.first, y.first) && t.leq(x.second, y.second); };
    out.axioms.localised = s.axioms.localised && t.axioms.localised;
    out.axioms.index = [s, t](const P& x, std::size_t k) {
        std::vector<AxiomIndex> is;
        for (const AxiomIndex& i : s.axioms.indices(x.first, k)) is.push_back({{"left", i}});
        for (const AxiomIndex& j : t.axioms.indices(x.second, k)) is.push_back({{"right", j}});
        return is;
    };
    out.axioms.has_index = [s, t](const P& x, const AxiomIndex& i) {
        if (i.contains("left")) return s.axioms.valid(x.first, i["left"], 64);
        if (i.contains("right")) return t.axioms.valid(x.second, i["right"], 64);
        return false;
    };
    out.axioms.body = [s, t](const P& x, const AxiomIndex& idx) {
        Subset<P> body;
        if (idx.contains("left")) {
            const Subset<E1> c = s.axioms.body(x.first, idx["left"]);
            const E2 b = x.second;
            body.contains = [c, b](const P& y) { return y.second == b && c.contains(y.first); };
            body.enumerate = [c, b](std::size_t k) {
                std::vector<P> ys;
                for (const E1& a : c.members(k)) ys.emplace_back(a, b);
                return ys;
            };
            body.finite = c.finite;
        } else {
            const Subset<E2> d = t.axioms.body(x.second, idx["right"]);
            const E1 a = x.first;
            body.contains = [d, a](const P& y) { return y.first == a && d.contains(y.second); };
            body.enumerate = [d, a](std::size_t k) {
                std::vector<P> ys;
                for (const E2& b : d.members(k)) ys.emplace_back(a, b);
                return ys;
            };
            body.finite = d.finite;
        }
        return body;
    };
    return out;
}

}  // namespace detail

// Binary product with projections (a,b) p a' iff (a,b) ◁ {a'} × T.
template <class E1, class E2>
BinaryProduct<E1, E2> binary_product(const FormalTopology<E1>& s, const FormalTopology<E2>& t) {
    using P = std::pair<E1, E2>;
    BinaryProduct<E1, E2> out{detail::product_topology(s, t), {}, {}};
    const FormalTopology<P> prod = out.topology;
    out.first.name = "p1";
    out.first.relates = [prod](const P& x, const E1& a, std::size_t k) {
        return cover_check(prod, x, Subset<P>::where([a](const P& y) { return y.first == a; }), k).verdict;
    };
    out.first.image = [](const P& x, std::size_t) { return std::vector<E1>{x.first}; };
    out.second.name = "p2";
    out.second.relates = [prod](const P& x, const E2& b, std::size_t k) {
        return cover_check(prod, x, Subset<P>::where([b](const P& y) { return y.second == b; }), k).verdict;
    };
    out.second.image = [](const P& x, std::size_t) { return std::vector<E2>{x.second}; };
    if (prod.base.finite()) {
        auto elems = std::make_shared<const std::vector<P>>(*prod.base.elements);
        out.first.fiber = [elems](const E1&, std::size_t) { return *elems; };
        out.second.fiber = [elems](const E2&, std::size_t) { return *elems; };
    }
    return out;
}

// ⟨r,s⟩: c ⟨r,s⟩ (a,b) iff c ◁ r⁻a and c ◁ s⁻b.
template <class S, class E1, class E2>
TopologyMap<S, std::pair<E1, E2>> pairing(const FormalTopology<S>& src, const TopologyMap<S, E1>& r,
                                          const TopologyMap<S, E2>& s) {
    TopologyMap<S, std::pair<E1, E2>> out;
    out.name = "⟨" + r.name + "," + s.name + "⟩";
    out.relates = [src, r, s](const S& c, const std::pair<E1, E2>& ab, std::size_t k) {
        const Verdict x = cover_check(src, c, preimage(r, ab.first, k), k).verdict;
        if (x == Verdict::Refuted) return x;
        const Verdict y = cover_check(src, c, preimage(s, ab.second, k), k).verdict;
        if (y == Verdict::Refuted) return y;
        return x == Verdict::Proved && y == Verdict::Proved ? Verdict::Proved : Verdict::Unknown;
    };
    if (r.image && s.image) {
        out.image = [r, s](const S& c, std::size_t k) {
            std::vector<std::pair<E1, E2>> xs;
            for (const E1& a : r.image(c, k))
                for (const E2& b : s.image(c, k)) xs.emplace_back(a, b);
            return xs;
        };
    }
    return out;
}

// Pullback of r: S1 → T and s: S2 → T, generated by the product axioms plus
// (a,b) ◁ S1 × s⁻c for a r c, and (a,b) ◁ r⁻c × S2 for b s c.
template <class E1, class E2, class E3>
BinaryProduct<E1, E2> pullback_product(const FormalTopology<E1>& s1, const FormalTopology<E2>& s2,
                                       const TopologyMap<E1, E3>& r, const TopologyMap<E2, E3>& s) {
    using P = std::pair<E1, E2>;
    BinaryProduct<E1, E2> out = binary_product(s1, s2);
    FormalTopology<P>& t = out.topology;
    t.name = s1.name + "×_T" + s2.name;
    t.axioms.localised = false;
    const AxiomSet<P> base_axioms = t.axioms;
    t.axioms.index = [base_axioms, r, s](const P& x, std::size_t k) {
        std::vector<AxiomIndex> is = base_axioms.indices(x, k);
        if (r.image)
            for (const E3& c : r.image(x.first, k))
                if (r.holds(x.first, c, k)) is.push_back({{"pb_left", c}});
        if (s.image)
            for (const E3& c : s.image(x.second, k))
                if (s.holds(x.second, c, k)) is.push_back({{"pb_right", c}});
        return is;
    };
    t.axioms.has_index = [base_axioms, r, s](const P& x, const AxiomIndex& i) {
        if (i.contains("pb_left")) return r.holds(x.first, i["pb_left"].template get<E3>(), 64);
        if (i.contains("pb_right")) return s.holds(x.second, i["pb_right"].template get<E3>(), 64);
        return base_axioms.valid(x, i, 64);
    };
    t.axioms.body = [base_axioms, r, s, s1, s2](const P& x, const AxiomIndex& i) {
        if (i.contains("pb_left")) {
            const E3 c = i["pb_left"].template get<E3>();
            Subset<P> body = Subset<P>::where([s, c](const P& y) { return s.holds(y.second, c, 64); });
            if (s1.base.finite() && s2.base.finite()) {
                std::vector<P> ys;
                for (const E1& a : *s1.base.elements)
                    for (const E2& b : *s2.base.elements)
                        if (s.holds(b, c, 64)) ys.emplace_back(a, b);
                return Subset<P>::of(std::move(ys));
            }
            return body;
        }
        if (i.contains("pb_right")) {
            const E3 c = i["pb_right"].template get<E3>();
            if (s1.base.finite() && s2.base.finite()) {
                std::vector<P> ys;
                for (const E1& a : *s1.base.elements)
                    if (r.holds(a, c, 64))
                        for (const E2& b : *s2.base.elements) ys.emplace_back(a, b);
                return Subset<P>::of(std::move(ys));
            }
            return Subset<P>::where([r, c](const P& y) { return r.holds(y.first, c, 64); });
        }
        return base_axioms.body(x, i);
    };
    const FormalTopology<P> prod = t;
    out.first.relates = [prod](const P& x, const E1& a, std::size_t k) {
        return cover_check(prod, x, Subset<P>::where([a](const P& y) { return y.first == a; }), k).verdict;
    };
    out.second.relates = [prod](const P& x, const E2& b, std::size_t k) {
        return cover_check(prod, x, Subset<P>::where([b](const P& y) { return y.second == b; }), k).verdict;
    };
    return out;
}

}  // namespace lcomp
