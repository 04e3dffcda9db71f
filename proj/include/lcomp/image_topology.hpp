// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/topology_map.hpp"

namespace lcomp {

namespace detail {

// r⁻*W = {b ∈ S' | r⁻b ⊆ W}, on finite bases.
template <class E1, class E2>
std::vector<E2> restrict_star(const TopologyMap<E1, E2>& r, const FormalTopology<E1>& s,
                              const FormalTopology<E2>& s2, const Saturation<E1>& w) {
    std::vector<E2> out;
    for (const E2& b : *s2.base.elements) {
        bool inside = true;
        for (const E1& a : *s.base.elements)
            if (r.holds(a, b, 0) && !w.contains(a)) inside = false;
        if (inside) out.push_back(b);
    }
    return out;
}

template <class E1, class E2>
Subset<E1> finite_preimage(const TopologyMap<E1, E2>& r, const FormalTopology<E1>& s, const std::vector<E2>& bs) {
    std::vector<E1> out;
    for (const E1& a : *s.base.elements)
        for (const E2& b : bs)
            if (r.holds(a, b, 0)) {
                out.push_back(a);
                break;
            }
    return Subset<E1>::of(std::move(out));
}

}  // namespace detail

// a ◁_r U iff a ∈ r⁻*𝒜r⁻U. Exact on finite bases.
template <class E1, class E2>
bool image_covers(const TopologyMap<E1, E2>& r, const FormalTopology<E1>& s, const FormalTopology<E2>& s2,
                  const E2& a, const Subset<E2>& u) {
    if (!s.base.finite() || !s2.base.finite()) throw NonFiniteBase("image topology needs finite bases");
    std::vector<E2> us;
    for (const E2& b : *s2.base.elements)
        if (u.contains(b)) us.push_back(b);
    const Saturation<E1> sat = saturate_finite(s, detail::finite_preimage(r, s, us));
    for (const E1& x : *s.base.elements)
        if (r.holds(x, a, 0) && !sat.contains(x)) return false;
    return true;
}

// The image of s under r. Proved covers carry the covered fiber as certificate.
template <class E1, class E2>
FormalTopology<E2> image_topology(const TopologyMap<E1, E2>& r, const FormalTopology<E1>& s,
                                  const FormalTopology<E2>& s2) {
    if (!s.base.finite() || !s2.base.finite()) throw NonFiniteBase("image topology needs finite bases");
    FormalTopology<E2> out;
    out.name = s2.name + "_" + r.name;
    out.base = s2.base;
    out.leq = s2.leq;
    out.axioms = AxiomSet<E2>::none();
    out.decide = [r, s, s2](const E2& a, const Subset<E2>& u, std::size_t) {
        if (image_covers(r, s, s2, a, u)) {
            Trace<E2> t{Rule::Plugin, a, std::nullopt, AxiomIndex(), {}, json{{"image_cover", true}}};
            return CoverJudgment<E2>::proved(std::move(t), "image cover");
        }
        return CoverJudgment<E2>::unknown("not in r⁻*𝒜r⁻U", 0);
    };
    out.verify = [r, s, s2](const E2& a, const Subset<E2>& u, const json&, std::size_t) {
        return image_covers(r, s, s2, a, u);
    };
    if (s.positivity) {
        const Subset<E1> pos = *s.positivity;
        std::vector<E2> rpos;
        for (const E2& b : *s2.base.elements)
            for (const E1& x : *s.base.elements)
                if (pos.contains(x) && r.holds(x, b, 0)) {
                    rpos.push_back(b);
                    break;
                }
        out.positivity = Subset<E2>::of(std::move(rpos));
    }
    // The generic finite-base route would ignore the plugin, so expose the
    // base only through sampling.
    out.base = Base<E2>::enumerated([elems = *s2.base.elements](std::size_t) { return elems; });
    return out;
}

// a ◁ r⁻r⁻*𝒜{a} for every a of the source.
template <class E1, class E2>
Judgment embedding_check(const TopologyMap<E1, E2>& r, const FormalTopology<E1>& s, const FormalTopology<E2>& s2) {
    if (!s.base.finite() || !s2.base.finite()) throw NonFiniteBase("embedding check needs finite bases");
    for (const E1& a : *s.base.elements) {
        const Saturation<E1> sa = saturate_finite(s, Subset<E1>::of({a}));
        const auto star = detail::restrict_star(r, s, s2, sa);
        const Subset<E1> back = detail::finite_preimage(r, s, star);
        if (!covers_finite(s, a, back)) return Judgment::refuted("not an embedding", {{"element", a}});
    }
    return Judgment::proved("all elements");
}

}  // namespace lcomp
