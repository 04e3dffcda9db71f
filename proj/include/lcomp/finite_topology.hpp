// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/formal_topology.hpp"
#include "lcomp/rational.hpp"

#include <string>
#include <vector>

namespace lcomp {

struct FiniteAxiom {
    std::string element;
    std::string index;
    std::vector<std::string> cover;
};

// Base elements as strings; `order` pairs (a, b) mean a ≤ b and are closed
// reflexively and transitively.
struct FiniteTopologySpec {
    std::string name = "finite";
    std::vector<std::string> base;
    std::vector<std::pair<std::string, std::string>> order;
    std::vector<FiniteAxiom> axioms;
};

// Document shape: {"name", "base": [..], "order": [[a,b],..],
// "axioms": [{"element", "index", "cover": [..]}]}. Throws ParseError.
FiniteTopologySpec parse_finite_topology(const json& doc);

// The localised flag is computed, not taken from the document.
FormalTopology<std::string> make_finite_topology(const FiniteTopologySpec& spec);

// c ≤ a and i ∈ I(a) give some j ∈ I(c) with C(c,j) ⊆ c↓C(a,i).
template <class E>
bool is_localised_finite(const FormalTopology<E>& t) {
    const FiniteView<E> v(t);
    for (std::size_t a = 0; a < v.size(); ++a)
        for (const AxiomIndex& i : t.axioms.indices(v.elems[a], 0)) {
            const auto body = detail::body_indices(v, t.axioms.body(v.elems[a], i));
            for (std::size_t c = 0; c < v.size(); ++c) {
                if (!v.le[c][a]) continue;
                const auto down = detail::down_meet(v, c, body);
                bool found = false;
                for (const AxiomIndex& j : t.axioms.indices(v.elems[c], 0)) {
                    bool inside = true;
                    for (std::size_t x : detail::body_indices(v, t.axioms.body(v.elems[c], j)))
                        inside = inside && std::find(down.begin(), down.end(), x) != down.end();
                    if (inside) {
                        found = true;
                        break;
                    }
                }
                if (!found) return false;
            }
        }
    return true;
}

}  // namespace lcomp
