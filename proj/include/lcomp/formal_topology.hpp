// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/judgment.hpp"
#include "lcomp/subset.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcomp {

struct NonFiniteBase : std::logic_error {
    using std::logic_error::logic_error;
};

struct NotSplitting : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Axiom indices are small structured values so traces stay printable.
using AxiomIndex = json;

template <class E>
struct AxiomSet {
    // I(a); for infinite index sets only a budget-dependent prefix.
    std::function<std::vector<AxiomIndex>(const E&, std::size_t budget)> index;
    // C(a,i).
    std::function<Subset<E>(const E&, const AxiomIndex&)> body;
    // i ∈ I(a). Falls back to searching index(a, budget).
    std::function<bool(const E&, const AxiomIndex&)> has_index;
    bool localised = false;

    static AxiomSet none() {
        AxiomSet s;
        s.index = [](const E&, std::size_t) { return std::vector<AxiomIndex>{}; };
        s.body = [](const E&, const AxiomIndex&) { return Subset<E>::empty(); };
        s.localised = true;
        return s;
    }

    std::vector<AxiomIndex> indices(const E& a, std::size_t budget) const {
        return index ? index(a, budget) : std::vector<AxiomIndex>{};
    }

    bool valid(const E& a, const AxiomIndex& i, std::size_t budget) const {
        if (has_index) return has_index(a, i);
        for (const auto& j : indices(a, budget))
            if (j == i) return true;
        return false;
    }
};

template <class E>
struct Base {
    std::optional<std::vector<E>> elements;
    std::function<std::vector<E>(std::size_t budget)> enumerator;

    static Base of(std::vector<E> xs) {
        Base b;
        b.elements = std::move(xs);
        return b;
    }
    static Base enumerated(std::function<std::vector<E>(std::size_t)> f) {
        Base b;
        b.enumerator = std::move(f);
        return b;
    }

    bool finite() const { return elements.has_value(); }
    std::vector<E> sample(std::size_t budget) const {
        if (elements) return *elements;
        return enumerator ? enumerator(budget) : std::vector<E>{};
    }
};

enum class Rule { Reflexivity, LeqLeft, Infinity, LeqInfinity, Plugin };

inline std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::Reflexivity: return "reflexivity";
        case Rule::LeqLeft: return "leq-left";
        case Rule::Infinity: return "infinity";
        case Rule::LeqInfinity: return "leq-infinity";
        case Rule::Plugin: return "plugin";
    }
    return "?";
}

// One rule application with its premises.
template <class E>
struct Trace {
    Rule rule = Rule::Reflexivity;
    E element{};
    std::optional<E> via;  // the b of leq-left / leq-infinity
    AxiomIndex index;      // axiom used by the infinity rules
    std::vector<Trace> premises;
    json certificate;      // plugin payload

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& p : premises) n += p.size();
        return n;
    }

    json to_json() const {
        json j;
        j["rule"] = std::string(lcomp::to_string(rule));
        j["element"] = element;
        if (via) j["via"] = *via;
        if (!index.is_null()) j["index"] = index;
        if (!premises.empty()) {
            json ps = json::array();
            for (const auto& p : premises) ps.push_back(p.to_json());
            j["premises"] = std::move(ps);
        }
        if (!certificate.is_null()) j["certificate"] = certificate;
        return j;
    }
};

template <class E>
struct PointWitness {
    Subset<E> alpha;
    json description;
};

template <class E>
struct CoverJudgment {
    Verdict verdict = Verdict::Unknown;
    std::optional<Trace<E>> trace;
    std::optional<PointWitness<E>> witness;
    std::size_t budget_spent = 0;
    std::string note;

    bool is_proved() const { return verdict == Verdict::Proved; }
    bool is_refuted() const { return verdict == Verdict::Refuted; }

    static CoverJudgment proved(Trace<E> t, std::string note = {}) {
        CoverJudgment j;
        j.verdict = Verdict::Proved;
        j.trace = std::move(t);
        j.note = std::move(note);
        return j;
    }
    static CoverJudgment refuted(PointWitness<E> w, std::string note = {}) {
        CoverJudgment j;
        j.verdict = Verdict::Refuted;
        j.witness = std::move(w);
        j.note = std::move(note);
        return j;
    }
    static CoverJudgment unknown(std::string note, std::size_t spent) {
        CoverJudgment j;
        j.note = std::move(note);
        j.budget_spent = spent;
        return j;
    }
};

template <class E>
struct FormalTopology {
    std::string name;
    Base<E> base;
    std::function<bool(const E&, const E&)> leq;
    AxiomSet<E> axioms = AxiomSet<E>::none();
    // Optional decision procedure; must return replayable certificates.
    std::function<CoverJudgment<E>(const E&, const Subset<E>&, std::size_t)> decide;
    // Replays a plugin certificate for a ◁ U.
    std::function<bool(const E&, const Subset<E>&, const json&, std::size_t)> verify;
    std::optional<Subset<E>> positivity;
    // Candidate common refinements of two elements, tried first by (P2) checks.
    std::function<std::vector<E>(const E&, const E&)> meets;
};

enum class SaturationMode { Auto, Infinity, LeqInfinity };

// Finite base with positions and the order as a matrix.
template <class E>
struct FiniteView {
    std::vector<E> elems;
    std::map<E, std::size_t> pos;
    std::vector<std::vector<char>> le;  // le[a][b] = a ≤ b

    explicit FiniteView(const FormalTopology<E>& t) {
        if (!t.base.finite()) throw NonFiniteBase("base of '" + t.name + "' is not finite");
        elems = *t.base.elements;
        for (std::size_t i = 0; i < elems.size(); ++i) pos.emplace(elems[i], i);
        le.assign(elems.size(), std::vector<char>(elems.size(), 0));
        for (std::size_t a = 0; a < elems.size(); ++a)
            for (std::size_t b = 0; b < elems.size(); ++b) le[a][b] = t.leq(elems[a], elems[b]) ? 1 : 0;
    }

    std::size_t size() const { return elems.size(); }
    std::optional<std::size_t> find(const E& e) const {
        auto it = pos.find(e);
        if (it == pos.end()) return std::nullopt;
        return it->second;
    }
    std::vector<std::size_t> indices_of(const Subset<E>& s) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (s.contains(elems[i])) out.push_back(i);
        return out;
    }
};

// Least fixpoint 𝒜U with provenance for trace reconstruction.
template <class E>
struct Saturation {
    struct Step {
        Rule rule = Rule::Reflexivity;
        std::size_t via = 0;
        AxiomIndex index;
        std::vector<std::size_t> premises;
    };

    std::vector<E> elems;
    std::vector<char> member;
    std::vector<std::optional<Step>> why;

    bool contains(const E& e) const {
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == e) return member[i] != 0;
        return false;
    }
    std::vector<E> members() const {
        std::vector<E> out;
        for (std::size_t i = 0; i < elems.size(); ++i)
            if (member[i]) out.push_back(elems[i]);
        return out;
    }

    Trace<E> trace_of(std::size_t i) const {
        const Step& s = *why[i];
        Trace<E> t;
        t.rule = s.rule;
        t.element = elems[i];
        if (s.rule == Rule::LeqLeft) {
            t.via = elems[s.via];
            t.premises.push_back(trace_of(s.via));
        } else if (s.rule == Rule::Infinity || s.rule == Rule::LeqInfinity) {
            if (s.rule == Rule::LeqInfinity) t.via = elems[s.via];
            t.index = s.index;
            for (std::size_t p : s.premises) t.premises.push_back(trace_of(p));
        }
        return t;
    }
};

namespace detail {

// Elements c ≤ a lying below some member of body.
template <class E>
std::vector<std::size_t> down_meet(const FiniteView<E>& v, std::size_t a, const std::vector<std::size_t>& body) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (!v.le[c][a]) continue;
        for (std::size_t x : body)
            if (v.le[c][x]) {
                out.push_back(c);
                break;
            }
    }
    return out;
}

template <class E>
std::vector<std::size_t> body_indices(const FiniteView<E>& v, const Subset<E>& body) {
    std::vector<std::size_t> out;
    if (body.finite) {
        for (const E& e : body.members(0))
            if (auto i = v.find(e)) out.push_back(*i);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    return v.indices_of(body);
}

}  // namespace detail

template <class E>
Saturation<E> saturate_finite(const FormalTopology<E>& t, const Subset<E>& u,
                              SaturationMode mode = SaturationMode::Auto) {
    const FiniteView<E> v(t);
    const std::size_t n = v.size();
    const bool use_infinity =
        mode == SaturationMode::Infinity || (mode == SaturationMode::Auto && t.axioms.localised);

    struct Instance {
        std::size_t target;
        std::size_t via;
        AxiomIndex index;
        std::vector<std::size_t> needs;
        std::size_t remaining;
    };
    std::vector<Instance> inst;
    for (std::size_t b = 0; b < n; ++b) {
        for (const AxiomIndex& i : t.axioms.indices(v.elems[b], 0)) {
            const auto body = detail::body_indices(v, t.axioms.body(v.elems[b], i));
            if (use_infinity) {
                inst.push_back({b, b, i, body, body.size()});
            } else {
                for (std::size_t a = 0; a < n; ++a)
                    if (v.le[a][b]) {
                        auto d = detail::down_meet(v, a, body);
                        const std::size_t k = d.size();
                        inst.push_back({a, b, i, std::move(d), k});
                    }
            }
        }
    }
    std::vector<std::vector<std::size_t>> uses(n);
    for (std::size_t k = 0; k < inst.size(); ++k)
        for (std::size_t c : inst[k].needs) uses[c].push_back(k);

    Saturation<E> s;
    s.elems = v.elems;
    s.member.assign(n, 0);
    s.why.assign(n, std::nullopt);
    std::deque<std::size_t> queue;
    auto add = [&](std::size_t x, typename Saturation<E>::Step step) {
        if (s.member[x]) return;
        s.member[x] = 1;
        s.why[x] = std::move(step);
        queue.push_back(x);
    };
    for (std::size_t x : v.indices_of(u)) add(x, {Rule::Reflexivity, 0, AxiomIndex(), {}});
    for (const Instance& in : inst)
        if (in.remaining == 0)
            add(in.target, {use_infinity ? Rule::Infinity : Rule::LeqInfinity, in.via, in.index, {}});
    while (!queue.empty()) {
        const std::size_t c = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < n; ++a)
            if (v.le[a][c] && a != c) add(a, {Rule::LeqLeft, c, AxiomIndex(), {}});
        for (std::size_t k : uses[c]) {
            Instance& in = inst[k];
            if (--in.remaining == 0)
                add(in.target, {use_infinity ? Rule::Infinity : Rule::LeqInfinity, in.via, in.index, in.needs});
        }
    }
    return s;
}

// Membership of a in 𝒜U for finite bases.
template <class E>
bool covers_finite(const FormalTopology<E>& t, const E& a, const Subset<E>& u) {
    return saturate_finite(t, u).contains(a);
}

// P1, P2, P3a, P3b over a finite base; alpha as a bit mask.
template <class E>
std::optional<std::string> finite_point_violation(const FormalTopology<E>& t, const FiniteView<E>& v,
                                                  const std::vector<char>& in) {
    const std::size_t n = v.size();
    bool inhabited = false;
    for (char c : in) inhabited = inhabited || c;
    if (!inhabited) return std::string("P1: empty");
    for (std::size_t a = 0; a < n; ++a) {
        if (!in[a]) continue;
        for (std::size_t b = 0; b < n; ++b)
            if (v.le[a][b] && !in[b]) return "P3a: upward closure fails at " + json(v.elems[b]).dump();
        for (std::size_t b = 0; b < n; ++b) {
            if (!in[b]) continue;
            bool meet = false;
            for (std::size_t c = 0; c < n && !meet; ++c) meet = in[c] && v.le[c][a] && v.le[c][b];
            if (!meet) return "P2: no common refinement of " + json(v.elems[a]).dump() + " and " + json(v.elems[b]).dump();
        }
        for (const AxiomIndex& i : t.axioms.indices(v.elems[a], 0)) {
            bool hit = false;
            for (std::size_t c : detail::body_indices(v, t.axioms.body(v.elems[a], i))) hit = hit || in[c];
            if (!hit) return "P3b: misses axiom " + i.dump() + " at " + json(v.elems[a]).dump();
        }
    }
    return std::nullopt;
}

namespace detail {

template <class E>
std::optional<Trace<E>> backward_search(const FormalTopology<E>& t, const E& a, const Subset<E>& u,
                                        std::size_t depth, std::size_t budget) {
    if (u.contains(a)) return Trace<E>{Rule::Reflexivity, a, std::nullopt, AxiomIndex(), {}, json()};
    if (depth == 0) return std::nullopt;
    for (const E& b : u.candidates_near(a, budget)) {
        if (!(b == a) && t.leq(a, b) && u.contains(b)) {
            Trace<E> leaf{Rule::Reflexivity, b, std::nullopt, AxiomIndex(), {}, json()};
            return Trace<E>{Rule::LeqLeft, a, b, AxiomIndex(), {leaf}, json()};
        }
    }
    for (const AxiomIndex& i : t.axioms.indices(a, budget)) {
        const Subset<E> body = t.axioms.body(a, i);
        if (!body.finite) continue;
        Trace<E> node{Rule::Infinity, a, std::nullopt, i, {}, json()};
        bool ok = true;
        for (const E& c : body.members(budget)) {
            auto sub = backward_search(t, c, u, depth - 1, budget);
            if (!sub) {
                ok = false;
                break;
            }
            node.premises.push_back(std::move(*sub));
        }
        if (ok) return node;
    }
    return std::nullopt;
}

}  // namespace detail

inline constexpr std::size_t kMaxPointSearchSize = 14;

// Dispatch: finite base → saturation; plugin → plugin; else bounded search.
template <class E>
CoverJudgment<E> cover_check(const FormalTopology<E>& t, const E& a, const Subset<E>& u, std::size_t budget) {
    if (u.contains(a))
        return CoverJudgment<E>::proved({Rule::Reflexivity, a, std::nullopt, AxiomIndex(), {}, json()});
    if (t.base.finite()) {
        const FiniteView<E> v(t);
        const Saturation<E> s = saturate_finite(t, u);
        const auto ia = v.find(a);
        if (!ia) return CoverJudgment<E>::unknown("element not in base", 0);
        if (s.member[*ia]) return CoverJudgment<E>::proved(s.trace_of(*ia), "saturation");
        // Search for a point through a that avoids 𝒜U.
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!s.member[i] && i != *ia) free.push_back(i);
        if (free.size() <= kMaxPointSearchSize) {
            const std::uint64_t combos = std::uint64_t{1} << free.size();
            for (std::uint64_t mask = 0; mask < combos; ++mask) {
                std::vector<char> in(v.size(), 0);
                in[*ia] = 1;
                for (std::size_t k = 0; k < free.size(); ++k)
                    if (mask >> k & 1u) in[free[k]] = 1;
                if (finite_point_violation(t, v, in)) continue;
                std::vector<E> pts;
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (in[i]) pts.push_back(v.elems[i]);
                json desc = json::array();
                for (const auto& p : pts) desc.push_back(json(p));
                return CoverJudgment<E>::refuted({Subset<E>::of(pts), desc}, "point through a missing U");
            }
        }
        return CoverJudgment<E>::unknown("not in the saturation; no separating point exists", 0);
    }
    if (t.decide) return t.decide(a, u, budget);
    if (auto tr = detail::backward_search(t, a, u, budget, budget)) return CoverJudgment<E>::proved(std::move(*tr));
    return CoverJudgment<E>::unknown("bounded search exhausted", budget);
}

// Replays a trace against the rules; plugin nodes go through t.verify.
template <class E>
Judgment replay(const FormalTopology<E>& t, const Trace<E>& tr, const Subset<E>& u, std::size_t budget) {
    auto fail = [&](const std::string& why) {
        return Judgment::refuted(why, {{"element", tr.element}, {"rule", std::string(to_string(tr.rule))}});
    };
    auto all_premises = [&]() -> Judgment {
        for (const auto& p : tr.premises) {
            Judgment j = replay(t, p, u, budget);
            if (!j.is_proved()) return j;
        }
        return Judgment::proved();
    };
    auto premises_cover = [&](const std::vector<E>& needed) {
        for (const E& c : needed) {
            bool found = false;
            for (const auto& p : tr.premises) found = found || p.element == c;
            if (!found) return false;
        }
        return true;
    };
    switch (tr.rule) {
        case Rule::Reflexivity:
            return u.contains(tr.element) ? Judgment::proved() : fail("reflexivity: element not in U");
        case Rule::LeqLeft:
            if (!tr.via || tr.premises.size() != 1 || !(tr.premises[0].element == *tr.via))
                return fail("leq-left: malformed");
            if (!t.leq(tr.element, *tr.via)) return fail("leq-left: order fails");
            return all_premises();
        case Rule::Infinity: {
            if (!t.axioms.valid(tr.element, tr.index, budget)) return fail("infinity: index not in I(a)");
            const Subset<E> body = t.axioms.body(tr.element, tr.index);
            if (!body.finite) return fail("infinity: body not finite");
            if (!premises_cover(body.members(budget))) return fail("infinity: body member without premise");
            return all_premises();
        }
        case Rule::LeqInfinity: {
            if (!tr.via || !t.leq(tr.element, *tr.via)) return fail("leq-infinity: order fails");
            if (!t.axioms.valid(*tr.via, tr.index, budget)) return fail("leq-infinity: index not in I(b)");
            if (!t.base.finite()) return fail("leq-infinity: needs a finite base");
            const FiniteView<E> v(t);
            const auto ia = v.find(tr.element);
            if (!ia) return fail("leq-infinity: element outside base");
            const auto body = detail::body_indices(v, t.axioms.body(*tr.via, tr.index));
            std::vector<E> needed;
            for (std::size_t c : detail::down_meet(v, *ia, body)) needed.push_back(v.elems[c]);
            if (!premises_cover(needed)) return fail("leq-infinity: a↓C(b,i) member without premise");
            return all_premises();
        }
        case Rule::Plugin:
            if (!t.verify) return fail("plugin certificate without verifier");
            return t.verify(tr.element, u, tr.certificate, budget) ? Judgment::proved()
                                                                    : fail("plugin certificate rejected");
    }
    return fail("unknown rule");
}

// Formal point check: exhaustive on finite bases, sampled otherwise.
template <class E>
Judgment check_point(const FormalTopology<E>& t, const Subset<E>& alpha, std::size_t budget) {
    if (t.base.finite()) {
        const FiniteView<E> v(t);
        std::vector<char> in(v.size(), 0);
        for (std::size_t i = 0; i < v.size(); ++i) in[i] = alpha.contains(v.elems[i]) ? 1 : 0;
        if (auto why = finite_point_violation(t, v, in)) return Judgment::refuted(*why);
        return Judgment::proved("all instances checked");
    }
    const std::vector<E> sample = t.base.sample(budget);
    std::vector<E> mem;
    for (const E& e : sample)
        if (alpha.contains(e)) mem.push_back(e);
    for (const E& e : alpha.members(budget))
        if (std::find(mem.begin(), mem.end(), e) == mem.end()) mem.push_back(e);
    if (mem.empty()) return Judgment::unknown("P1: no member among sampled elements", budget);
    bool incomplete = false;
    for (const E& a : mem) {
        for (const E& b : sample)
            if (t.leq(a, b) && !alpha.contains(b))
                return Judgment::refuted("P3a: upward closure fails", {{"below", a}, {"above", b}});
        for (const E& b : mem) {
            bool meet = false;
            if (t.meets)
                for (const E& c : t.meets(a, b)) meet = meet || (alpha.contains(c) && t.leq(c, a) && t.leq(c, b));
            for (const E& c : mem) meet = meet || (t.leq(c, a) && t.leq(c, b));
            if (!meet) incomplete = true;
        }
        for (const AxiomIndex& i : t.axioms.indices(a, budget)) {
            const Subset<E> body = t.axioms.body(a, i);
            bool hit = false;
            for (const E& c : body.members(budget)) hit = hit || alpha.contains(c);
            if (!hit) {
                if (body.finite) return Judgment::refuted("P3b: misses axiom body", {{"element", a}, {"index", i}});
                incomplete = true;
            }
        }
    }
    if (incomplete) return Judgment::unknown("some instance undecided within budget", budget);
    return Judgment::proved("sampled instances checked", {{"sampled", mem.size()}});
}

// V is upward closed, and every axiom at a point of V has a body meeting V below it.
template <class E>
Judgment check_splitting(const FormalTopology<E>& t, const Subset<E>& v, std::size_t samples) {
    const std::vector<E> base = t.base.sample(samples);
    bool incomplete = false;
    for (const E& a : base) {
        if (!v.contains(a)) continue;
        for (const E& b : base)
            if (t.leq(a, b) && !v.contains(b)) return Judgment::refuted("not upward closed", {{"element", a}, {"above", b}});
        const auto check_body = [&](const E& b, const AxiomIndex& i) -> std::optional<Judgment> {
            const Subset<E> body = t.axioms.body(b, i);
            std::vector<E> cs = body.members(samples);
            if (body.near)
                for (const E& x : body.near(a, samples))
                    if (std::find(cs.begin(), cs.end(), x) == cs.end()) cs.push_back(x);
            bool hit = false;
            if (t.axioms.localised && b == a) {
                for (const E& c : cs) hit = hit || v.contains(c);
            } else {
                for (const E& c : base) {
                    if (!v.contains(c) || !t.leq(c, a)) continue;
                    for (const E& x : cs) hit = hit || t.leq(c, x);
                    if (hit) break;
                }
                if (!hit && t.meets)
                    for (const E& x : cs) {
                        for (const E& c : t.meets(a, x)) hit = hit || (v.contains(c) && t.leq(c, a) && t.leq(c, x));
                        if (hit) break;
                    }
            }
            if (hit) return std::nullopt;
            if (body.finite && t.base.finite())
                return Judgment::refuted("an axiom body misses the subset",
                                         {{"element", a}, {"axiom_at", b}, {"index", i}});
            incomplete = true;
            return std::nullopt;
        };
        if (t.axioms.localised) {
            for (const AxiomIndex& i : t.axioms.indices(a, samples))
                if (auto bad = check_body(a, i)) return *bad;
        } else {
            for (const E& b : base) {
                if (!t.leq(a, b)) continue;
                for (const AxiomIndex& i : t.axioms.indices(b, samples))
                    if (auto bad = check_body(b, i)) return *bad;
            }
        }
    }
    if (incomplete) return Judgment::unknown("undecided instances within sample", samples);
    return Judgment::proved(t.base.finite() ? "all instances checked" : "sampled instances checked");
}

// Adds the axioms a ◁ V ∩ {a}; V becomes the positivity.
template <class E>
FormalTopology<E> weakly_closed(const FormalTopology<E>& t, const Subset<E>& v) {
    if (t.base.finite()) {
        const Judgment j = check_splitting(t, v, 0);
        if (j.is_refuted()) throw NotSplitting("subset is not splitting: " + j.note);
    }
    FormalTopology<E> out = t;
    out.name = t.name + "|V";
    const AxiomSet<E> old = t.axioms;
    const AxiomIndex tag = {{"weakly_closed", true}};
    out.axioms.index = [old, tag](const E& a, std::size_t k) {
        auto is = old.indices(a, k);
        is.push_back(tag);
        return is;
    };
    out.axioms.body = [old, tag, v](const E& a, const AxiomIndex& i) {
        if (i == tag) return v.contains(a) ? Subset<E>::of({a}) : Subset<E>::empty();
        return old.body(a, i);
    };
    out.axioms.has_index = [old, tag](const E& a, const AxiomIndex& i) {
        return i == tag || old.valid(a, i, 64);
    };
    out.positivity = v;
    if (t.decide) {
        // Old covers survive the extension; old refutations need not.
        out.decide = [old_decide = t.decide, v, tag](const E& a, const Subset<E>& u, std::size_t k) {
            if (!v.contains(a))
                return CoverJudgment<E>::proved({Rule::Infinity, a, std::nullopt, tag, {}, json()}, "outside V");
            auto j = old_decide(a, u, k);
            if (j.is_refuted()) return CoverJudgment<E>::unknown("refutation not transferred to the subtopology", k);
            return j;
        };
    }
    return out;
}

}  // namespace lcomp
