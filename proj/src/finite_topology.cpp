// SPDX-License-Identifier: Apache-2.0
#include "lcomp/finite_topology.hpp"
#include "lcomp/theory.hpp"

#include <map>

namespace lcomp {

namespace {

std::string str_at(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path + ": expected a string");
    return j.get<std::string>();
}

const json& array_at(const json& doc, const char* key) {
    static const json empty = json::array();
    if (!doc.contains(key)) return empty;
    const json& a = doc[key];
    if (!a.is_array()) throw ParseError(std::string(key) + ": expected an array");
    return a;
}

}  // namespace

FiniteTopologySpec parse_finite_topology(const json& doc) {
    if (!doc.is_object()) throw ParseError("finite topology: expected an object");
    FiniteTopologySpec spec;
    if (doc.contains("name")) spec.name = str_at(doc["name"], "name");
    const json& base = array_at(doc, "base");
    for (std::size_t i = 0; i < base.size(); ++i) spec.base.push_back(str_at(base[i], "base[" + std::to_string(i) + "]"));
    const json& order = array_at(doc, "order");
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::string path = "order[" + std::to_string(i) + "]";
        if (!order[i].is_array() || order[i].size() != 2) throw ParseError(path + ": expected a pair");
        spec.order.emplace_back(str_at(order[i][0], path + "[0]"), str_at(order[i][1], path + "[1]"));
    }
    const json& axioms = array_at(doc, "axioms");
    for (std::size_t i = 0; i < axioms.size(); ++i) {
        const std::string path = "axioms[" + std::to_string(i) + "]";
        const json& a = axioms[i];
        if (!a.is_object() || !a.contains("element") || !a.contains("cover"))
            throw ParseError(path + ": expected {element, index, cover}");
        FiniteAxiom ax;
        ax.element = str_at(a["element"], path + ".element");
        ax.index = a.contains("index") ? str_at(a["index"], path + ".index") : std::to_string(i);
        if (!a["cover"].is_array()) throw ParseError(path + ".cover: expected an array");
        for (std::size_t k = 0; k < a["cover"].size(); ++k)
            ax.cover.push_back(str_at(a["cover"][k], path + ".cover[" + std::to_string(k) + "]"));
        spec.axioms.push_back(std::move(ax));
    }
    std::map<std::string, int> known;
    for (const auto& b : spec.base) known[b] = 1;
    auto check = [&](const std::string& e, const std::string& where) {
        if (!known.count(e)) throw ParseError(where + ": unknown element '" + e + "'");
    };
    for (std::size_t i = 0; i < spec.order.size(); ++i) {
        check(spec.order[i].first, "order[" + std::to_string(i) + "]");
        check(spec.order[i].second, "order[" + std::to_string(i) + "]");
    }
    for (std::size_t i = 0; i < spec.axioms.size(); ++i) {
        check(spec.axioms[i].element, "axioms[" + std::to_string(i) + "]");
        for (const auto& c : spec.axioms[i].cover) check(c, "axioms[" + std::to_string(i) + "].cover");
    }
    return spec;
}

FormalTopology<std::string> make_finite_topology(const FiniteTopologySpec& spec) {
    const std::size_t n = spec.base.size();
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[spec.base[i]] = i;
    auto le = std::make_shared<std::vector<std::vector<char>>>(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) (*le)[i][i] = 1;
    for (const auto& [a, b] : spec.order) (*le)[pos.at(a)][pos.at(b)] = 1;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if ((*le)[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if ((*le)[k][j]) (*le)[i][j] = 1;

    using Table = std::map<std::string, std::vector<std::pair<std::string, std::vector<std::string>>>>;
    auto table = std::make_shared<Table>();
    for (const auto& ax : spec.axioms) (*table)[ax.element].emplace_back(ax.index, ax.cover);

    FormalTopology<std::string> t;
    t.name = spec.name;
    t.base = Base<std::string>::of(spec.base);
    auto p = std::make_shared<const std::map<std::string, std::size_t>>(std::move(pos));
    t.leq = [le, p](const std::string& a, const std::string& b) {
        auto ia = p->find(a), ib = p->find(b);
        if (ia == p->end() || ib == p->end()) return a == b;
        return (*le)[ia->second][ib->second] != 0;
    };
    t.axioms.index = [table](const std::string& a, std::size_t) {
        std::vector<AxiomIndex> is;
        auto it = table->find(a);
        if (it != table->end())
            for (const auto& [i, body] : it->second) is.push_back(i);
        return is;
    };
    t.axioms.body = [table](const std::string& a, const AxiomIndex& i) {
        auto it = table->find(a);
        if (it != table->end())
            for (const auto& [j, body] : it->second)
                if (AxiomIndex(j) == i) return Subset<std::string>::of(body);
        return Subset<std::string>::empty();
    };
    t.axioms.localised = false;
    t.axioms.localised = is_localised_finite(t);
    return t;
}

std::vector<Rational> positive_rationals(std::size_t k) {
    std::vector<Rational> out;
    for (long q = 1; q <= static_cast<long>(k) + 1; ++q)
        for (long p = 1; p <= 3 * q; ++p) {
            const Rational r(p, q);
            if (r.denominator() == q) out.push_back(r);
        }
    return out;
}

GeometricTheory<Rational> upper_real_theory() {
    using F = Fin<Rational>;
    GeometricTheory<Rational> th;
    th.name = "T_u";
    th.generators = Subset<Rational>::where([](const Rational& q) { return q.sign() > 0; }, positive_rationals);

    auto round_axiom = [](const Rational& q) {
        Subset<F> ds;
        ds.contains = [q](const F& d) { return d.size() == 1 && d.begin()->sign() > 0 && *d.begin() < q; };
        ds.enumerate = [q](std::size_t k) {
            std::vector<F> out;
            for (std::size_t j = 1; j <= k + 1; ++j) out.push_back({q * (Rational(1) - Rational::pow2(-static_cast<long>(j)))});
            return out;
        };
        return TheoryAxiom<Rational>{"round:" + q.str(), F{q}, ds};
    };
    auto up_axiom = [](const Rational& q, const Rational& r) {
        return TheoryAxiom<Rational>{"up:" + q.str() + ":" + r.str(), F{q}, Subset<F>::of({F{r}})};
    };
    th.axioms_at = [round_axiom, up_axiom](const F& p, std::size_t k) {
        std::vector<TheoryAxiom<Rational>> out;
        for (const Rational& q : p) {
            out.push_back(round_axiom(q));
            for (const Rational& r : positive_rationals(k))
                if (q < r) out.push_back(up_axiom(q, r));
        }
        return out;
    };
    th.axiom = [round_axiom, up_axiom](const F& p, const std::string& label) -> std::optional<TheoryAxiom<Rational>> {
        try {
            if (label.rfind("round:", 0) == 0) {
                const Rational q = Rational::parse(label.substr(6));
                if (p.count(q)) return round_axiom(q);
            } else if (label.rfind("up:", 0) == 0) {
                const auto colon = label.find(':', 3);
                if (colon == std::string::npos) return std::nullopt;
                const Rational q = Rational::parse(label.substr(3, colon - 3));
                const Rational r = Rational::parse(label.substr(colon + 1));
                if (p.count(q) && q <= r) return up_axiom(q, r);
            }
        } catch (const ParseError&) {
        }
        return std::nullopt;
    };
    return th;
}

}  // namespace lcomp
