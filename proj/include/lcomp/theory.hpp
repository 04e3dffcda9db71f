// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/formal_topology.hpp"
#include "lcomp/rational.hpp"

#include <set>
#include <string>

namespace lcomp {

template <class G>
using Fin = std::set<G>;

// ⋀premise ⊢ ⋁ disjuncts.
template <class G>
struct TheoryAxiom {
    std::string label;
    Fin<G> premise;
    Subset<Fin<G>> disjuncts;
};

template <class G>
struct GeometricTheory {
    std::string name;
    Subset<G> generators;
    // Axioms whose premise is contained in P, a budget-limited prefix when infinite.
    std::function<std::vector<TheoryAxiom<G>>(const Fin<G>& p, std::size_t budget)> axioms_at;
    // Exact lookup by label, for replay.
    std::function<std::optional<TheoryAxiom<G>>(const Fin<G>& p, const std::string& label)> axiom;

    static GeometricTheory finite(std::string name, std::vector<G> gens,
                                  std::vector<std::pair<Fin<G>, std::vector<Fin<G>>>> rules) {
        auto all = std::make_shared<std::vector<TheoryAxiom<G>>>();
        for (std::size_t k = 0; k < rules.size(); ++k)
            all->push_back({"r" + std::to_string(k), rules[k].first, Subset<Fin<G>>::of(rules[k].second)});
        GeometricTheory t;
        t.name = std::move(name);
        t.generators = Subset<G>::of(std::move(gens));
        t.axioms_at = [all](const Fin<G>& p, std::size_t) {
            std::vector<TheoryAxiom<G>> out;
            for (const auto& ax : *all)
                if (std::includes(p.begin(), p.end(), ax.premise.begin(), ax.premise.end())) out.push_back(ax);
            return out;
        };
        t.axiom = [all](const Fin<G>& p, const std::string& label) -> std::optional<TheoryAxiom<G>> {
            for (const auto& ax : *all)
                if (ax.label == label && std::includes(p.begin(), p.end(), ax.premise.begin(), ax.premise.end()))
                    return ax;
            return std::nullopt;
        };
        return t;
    }
};

inline constexpr std::size_t kMaxTheoryGenerators = 12;

// Fin(G) ordered by reverse inclusion; axioms P ◁ {P ∪ P_i}.
template <class G>
FormalTopology<Fin<G>> topology_of_theory(const GeometricTheory<G>& th) {
    using F = Fin<G>;
    FormalTopology<F> t;
    t.name = "S(" + th.name + ")";
    if (th.generators.finite) {
        const std::vector<G> gens = th.generators.members(0);
        if (gens.size() > kMaxTheoryGenerators) throw NonFiniteBase("too many generators to list Fin(G)");
        std::vector<F> elems;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gens.size()); ++mask) {
            F s;
            for (std::size_t k = 0; k < gens.size(); ++k)
                if (mask >> k & 1u) s.insert(gens[k]);
            elems.push_back(std::move(s));
        }
        t.base = Base<F>::of(std::move(elems));
    } else {
        const Subset<G> gens = th.generators;
        t.base = Base<F>::enumerated([gens](std::size_t k) {
            const std::vector<G> gs = gens.members(k);
            std::vector<F> out{F{}};
            for (std::size_t i = 0; i < gs.size(); ++i) {
                out.push_back(F{gs[i]});
                for (std::size_t j = i + 1; j < gs.size(); ++j) out.push_back(F{gs[i], gs[j]});
            }
            return out;
        });
    }
    t.leq = [](const F& a, const F& b) { return std::includes(a.begin(), a.end(), b.begin(), b.end()); };
    t.meets = [](const F& a, const F& b) {
        F c = a;
        c.insert(b.begin(), b.end());
        return std::vector<F>{c};
    };
    // Localised: the body of P is {P ∪ P_i}, all below P.
    t.axioms.localised = true;
    t.axioms.index = [th](const F& p, std::size_t k) {
        std::vector<AxiomIndex> is;
        for (const auto& ax : th.axioms_at(p, k)) is.push_back(ax.label);
        return is;
    };
    t.axioms.has_index = [th](const F& p, const AxiomIndex& i) {
        return i.is_string() && th.axiom(p, i.template get<std::string>()).has_value();
    };
    t.axioms.body = [th](const F& p, const AxiomIndex& i) {
        const auto ax = th.axiom(p, i.template get<std::string>());
        if (!ax) return Subset<F>::empty();
        const Subset<F> ds = ax->disjuncts;
        Subset<F> body;
        body.finite = ds.finite;
        // P ∪ P_i for a disjunct P_i; membership tests the candidate's difference.
        body.contains = [p, ds](const F& c) {
            if (!std::includes(c.begin(), c.end(), p.begin(), p.end())) return false;
            F rest;
            std::set_difference(c.begin(), c.end(), p.begin(), p.end(), std::inserter(rest, rest.end()));
            if (ds.contains(rest)) return true;
            // The disjunct may overlap P.
            for (const F& d : ds.members(8)) {
                F u = p;
                u.insert(d.begin(), d.end());
                if (u == c) return true;
            }
            return false;
        };
        body.enumerate = [p, ds](std::size_t k) {
            std::vector<F> out;
            for (const F& d : ds.members(k)) {
                F u = p;
                u.insert(d.begin(), d.end());
                if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(std::move(u));
            }
            return out;
        };
        return body;
    };
    return t;
}

// m ↦ Fin(m).
template <class G>
Subset<Fin<G>> model_point_bridge(const Subset<G>& m) {
    Subset<Fin<G>> out;
    out.contains = [m](const Fin<G>& a) {
        for (const G& g : a)
            if (!m.contains(g)) return false;
        return true;
    };
    out.enumerate = [m](std::size_t k) {
        const std::vector<G> gs = m.members(k);
        std::vector<Fin<G>> xs{Fin<G>{}};
        for (std::size_t i = 0; i < gs.size(); ++i) {
            xs.push_back({gs[i]});
            for (std::size_t j = i + 1; j < gs.size(); ++j) xs.push_back({gs[i], gs[j]});
        }
        return xs;
    };
    out.finite = false;
    return out;
}

// α ↦ {p | {p} ∈ α}.
template <class G>
Subset<G> point_model_bridge(const Subset<Fin<G>>& alpha) {
    Subset<G> out;
    out.contains = [alpha](const G& g) { return alpha.contains(Fin<G>{g}); };
    out.enumerate = [alpha](std::size_t k) {
        std::vector<G> gs;
        for (const Fin<G>& a : alpha.members(k))
            if (a.size() == 1) gs.push_back(*a.begin());
        return gs;
    };
    out.finite = alpha.finite;
    return out;
}

// Positive rationals p/q with q ≤ k+1 and p ≤ 3q, in a fixed order.
std::vector<Rational> positive_rationals(std::size_t k);

// Upper reals: q ⊢ q' for q ≤ q', and q ⊢ ⋁_{q'<q} q'.
GeometricTheory<Rational> upper_real_theory();

}  // namespace lcomp
