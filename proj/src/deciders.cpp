// SPDX-License-Identifier: Apache-2.0
#include "lcomp/deciders.hpp"

#include <algorithm>
#include <numeric>

namespace lcomp {

namespace {

void check_interval(const Interval& i, const char* what) {
    if (!(i.first < i.second))
        throw MalformedInterval(std::string(what) + " (" + i.first.str() + "," + i.second.str() + ") is empty");
}

json interval_json(const Interval& i) { return json::array({i.first, i.second}); }

Interval interval_from(const json& j) { return {j.at(0).get<Rational>(), j.at(1).get<Rational>()}; }

}  // namespace

IntervalCover decide_interval_cover(const Interval& target, const std::vector<Interval>& u) {
    check_interval(target, "target");
    for (const Interval& m : u) check_interval(m, "member");
    const auto& [p, q] = target;

    IntervalCover out;
    json order = json::array();
    // reach: everything in (p, reach) is covered. The point p itself is not in
    // the target, so the first member may start at p; later ones must start
    // strictly before reach.
    Rational reach = p;
    bool first = true;
    while (reach < q) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const bool starts = first ? !(p < u[i].first) : u[i].first < reach;
            if (starts && reach < u[i].second && (!best || u[*best].second < u[i].second)) best = i;
        }
        if (!best) {
            if (first) {
                Rational next = q;
                for (const Interval& m : u)
                    if (p < m.first) next = min(next, m.first);
                out.witness = mid(p, next);
            } else {
                out.witness = reach;
            }
            out.verdict = Verdict::Refuted;
            return out;
        }
        order.push_back(*best);
        reach = u[*best].second;
        first = false;
    }
    out.verdict = Verdict::Proved;
    out.certificate = json{{"target", interval_json(target)}, {"order", std::move(order)}};
    return out;
}

std::vector<std::pair<Interval, std::size_t>> chain_for_shrink(const json& certificate, const std::vector<Interval>& u,
                                                                const Interval& shrink) {
    std::vector<std::pair<Interval, std::size_t>> chain;
    Rational lo = shrink.first;
    for (const auto& jx : certificate.at("order")) {
        const std::size_t i = jx.get<std::size_t>();
        const Interval& m = u.at(i);
        if (!chain.empty()) lo = max(lo, m.first);
        const Rational hi = min(shrink.second, m.second);
        chain.push_back({{lo, hi}, i});
        if (hi == shrink.second) break;
    }
    return chain;
}

bool verify_chain(const std::vector<std::pair<Interval, std::size_t>>& chain, const std::vector<Interval>& u,
                  const Interval& shrink) {
    if (chain.empty()) return false;
    if (chain.front().first.first != shrink.first || chain.back().first.second != shrink.second) return false;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const auto& [iv, idx] = chain[k];
        if (idx >= u.size() || !(iv.first < iv.second)) return false;
        if (iv.first < u[idx].first || u[idx].second < iv.second) return false;
        if (k + 1 < chain.size()) {
            const Interval& nx = chain[k + 1].first;
            if (!(iv.first <= nx.first && nx.first < iv.second && iv.second <= nx.second)) return false;
        }
    }
    return true;
}

bool chain_oracle(const Interval& target, const std::vector<Interval>& u, long grid_denominator) {
    const Rational step(1, 4 * grid_denominator);
    std::vector<Rational> grid;
    for (Rational x = target.first; x <= target.second; x += step) grid.push_back(x);
    const std::size_t n = grid.size();
    auto inside = [&](std::size_t a, std::size_t b) {
        for (const Interval& m : u)
            if (m.first <= grid[a] && grid[b] <= m.second) return true;
        return false;
    };
    // Only strict shrinks p < p' < q' < q, on grid points.
    for (std::size_t s = 1; s + 1 < n; ++s)
        for (std::size_t e = s + 1; e + 1 < n; ++e) {
            // best[b]: least left end of a chain link ending at b.
            std::vector<std::optional<std::size_t>> best(n);
            for (std::size_t b = s + 1; b <= e; ++b)
                if (inside(s, b)) best[b] = s;
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t b = s + 1; b <= e; ++b) {
                    if (!best[b]) continue;
                    for (std::size_t a2 = *best[b]; a2 < b; ++a2)
                        for (std::size_t b2 = b; b2 <= e; ++b2)
                            if (inside(a2, b2) && (!best[b2] || a2 < *best[b2])) {
                                best[b2] = a2;
                                changed = true;
                            }
                }
            }
            if (!best[e]) return false;
        }
    return true;
}

FormalTopology<Interval> formal_reals() {
    FormalTopology<Interval> t;
    t.name = "formal reals";
    t.base = Base<Interval>::enumerated([](std::size_t k) {
        const long den = 1L << std::min<std::size_t>(k, 3);
        std::vector<Interval> out;
        for (long a = -2 * den; a <= 2 * den; ++a)
            for (long b = a + 1; b <= 2 * den; ++b) out.push_back({Rational(a, den), Rational(b, den)});
        return out;
    });
    t.leq = [](const Interval& a, const Interval& b) { return b.first <= a.first && a.second <= b.second; };
    t.positivity = Subset<Interval>::where([](const Interval& a) { return a.first < a.second; });
    t.meets = [](const Interval& a, const Interval& b) {
        const Interval m{max(a.first, b.first), min(a.second, b.second)};
        if (m.first < m.second) return std::vector<Interval>{m};
        return std::vector<Interval>{};
    };
    t.decide = [](const Interval& a, const Subset<Interval>& u, std::size_t budget) {
        std::vector<Interval> ms = u.candidates_near(a, budget);
        ms.erase(std::remove_if(ms.begin(), ms.end(), [&](const Interval& m) { return !u.contains(m); }), ms.end());
        const IntervalCover d = decide_interval_cover(a, ms);
        if (d.verdict == Verdict::Proved) {
            json members = json::array();
            for (const auto& i : d.certificate["order"]) members.push_back(interval_json(ms[i.get<std::size_t>()]));
            return CoverJudgment<Interval>::proved(
                Trace<Interval>{Rule::Plugin, a, std::nullopt, AxiomIndex(), {}, json{{"chain", std::move(members)}}},
                "interval chain");
        }
        if (!u.finite) return CoverJudgment<Interval>::unknown("enumerated members leave a gap", budget);
        const Rational x = *d.witness;
        return CoverJudgment<Interval>::refuted(
            PointWitness<Interval>{Subset<Interval>::where([x](const Interval& i) { return i.first < x && x < i.second; }),
                                   json{{"point", x}}},
            "point in no member");
    };
    // The chain lists members in sweep order; each must overlap the next.
    t.verify = [](const Interval& a, const Subset<Interval>& u, const json& c, std::size_t) {
        try {
            std::vector<Interval> ms;
            for (const auto& j : c.at("chain")) ms.push_back(interval_from(j));
            if (ms.empty() || a.first < ms.front().first || ms.back().second < a.second) return false;
            for (std::size_t k = 0; k < ms.size(); ++k) {
                if (!u.contains(ms[k]) || !(ms[k].first < ms[k].second)) return false;
                if (k + 1 < ms.size() && !(ms[k + 1].first < ms[k].second && ms[k].second < ms[k + 1].second)) return false;
            }
            return true;
        } catch (const std::exception&) {
            return false;
        }
    };
    return t;
}

namespace {

Ball scaled(const Ball& b, std::size_t j) {
    return Ball{b.metric, b.center, b.radius * (Rational(1) - Rational::pow2(-static_cast<long>(j)))};
}

std::size_t schedule_length(std::size_t budget) { return std::clamp<std::size_t>(budget, 1, 3); }

constexpr std::size_t kMaxSlack = 24;

}  // namespace

CoverJudgment<Ball> semidecide_lc_cover(const Gus& g, const Ball& a, const Subset<Ball>& u, std::size_t budget) {
    if (!g.oracle || !g.oracle->locally_compact()) throw OracleMissing("'" + g.name + "' has no locally compact oracle");
    CoverJudgment<Ball> j = completion_cover(g, a, u, budget);
    if (!j.is_proved() || j.trace->rule != Rule::Plugin || !j.trace->certificate.contains("members")) return j;

    std::vector<Ball> members;
    for (const auto& m : j.trace->certificate["members"]) members.push_back(m.get<Ball>());
    json schedule = json::array();
    for (std::size_t k = 1; k <= schedule_length(budget); ++k) {
        const Ball bk = scaled(a, k);
        bool found = false;
        for (std::size_t s = 1; s <= kMaxSlack && !found; ++s) {
            std::vector<Ball> v;
            for (const Ball& m : members) v.push_back(scaled(m, s));
            const CoverDecision d = g.oracle->cover(g, bk, v, budget);
            if (d.verdict != Verdict::Proved) continue;
            schedule.push_back(json{{"k", k}, {"slack", s}, {"cover", d.certificate}});
            found = true;
        }
        if (!found) return CoverJudgment<Ball>::unknown("shrink schedule did not close", budget);
    }
    j.trace->certificate["schedule"] = std::move(schedule);
    return j;
}

bool verify_lc_certificate(const Gus& g, const Ball& a, const Subset<Ball>& u, const json& c) {
    if (!verify_completion_cover(g, a, u, c)) return false;
    if (!c.contains("schedule")) return true;
    try {
        std::vector<Ball> members;
        for (const auto& m : c.at("members")) members.push_back(m.get<Ball>());
        for (const auto& step : c["schedule"]) {
            const std::size_t k = step.at("k").get<std::size_t>(), s = step.at("slack").get<std::size_t>();
            if (k == 0 || s == 0) return false;
            std::vector<Ball> v;
            for (const Ball& m : members) {
                Ball sm = scaled(m, s);
                if (ball_leq(g, sm, m, true, 16) != Verdict::Proved) return false;
                v.push_back(std::move(sm));
            }
            if (!g.oracle->verify_cover(g, scaled(a, k), v, step.at("cover"))) return false;
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

SubcoverResult finite_subcover(const Gus& g, const Subset<Ball>& u, std::size_t budget) {
    if (!g.oracle || !g.oracle->exact()) throw OracleMissing("'" + g.name + "' has no exact oracle");
    SubcoverResult out;
    out.u0 = u.members(budget);
    const MetricId full = g.full_metric();

    auto uncovered = [&](const Point& x) {
        if (!u.finite || !g.in_carrier(x)) return false;
        for (const Ball& m : out.u0)
            if (ball_has(g, m, x, budget) != Verdict::Refuted) return false;
        return true;
    };

    for (std::size_t k = 1; k <= budget + 2; ++k) {
        const Rational eps = Rational::pow2(-static_cast<long>(k));
        const std::vector<Point> net = g.oracle->eps_net(g, full, eps);
        // Among uncovered net points, the one deepest outside every member.
        std::optional<Bound> best_margin;
        for (const Point& x : net) {
            if (!uncovered(x)) continue;
            Bound margin = Bound::pos_inf();
            for (const Ball& m : out.u0) margin = min(margin, metric_eval(g, m.metric, m.center, x, 16).lo - m.radius);
            if (!best_margin || *best_margin < margin) {
                best_margin = margin;
                out.witness = x;
            }
        }
        if (out.witness) {
            out.verdict = Verdict::Refuted;
            return out;
        }
        json certs = json::array();
        bool all = true;
        for (const Point& x : net) {
            const Ball nb{full, x, eps};
            const CoverDecision d = g.oracle->cover(g, nb, out.u0, budget);
            if (d.verdict != Verdict::Proved) {
                // Midpoints of uncovered cells are the last refutation samples.
                if (d.witness && uncovered(*d.witness)) {
                    out.verdict = Verdict::Refuted;
                    out.witness = d.witness;
                    return out;
                }
                all = false;
                break;
            }
            certs.push_back(json{{"ball", nb}, {"cover", d.certificate}});
        }
        if (all) {
            out.verdict = Verdict::Proved;
            out.certificate = json{{"eps", eps}, {"net", std::move(certs)}};
            return out;
        }
    }
    return out;
}

}  // namespace lcomp
