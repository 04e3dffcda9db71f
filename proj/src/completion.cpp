// SPDX-License-Identifier: Apache-2.0
#include "lcomp/completion.hpp"

#include <algorithm>

namespace lcomp {

namespace {

constexpr unsigned kPrec = 30;

void push_unique(std::vector<Ball>& out, Ball b) {
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
}

bool order(const Gus& g, const Ball& a, const Ball& b, bool strict) {
    return (ball_leq(g, a, b, strict, 64) == Verdict::Proved);
}

// Centers on a pitch-h grid within `reach` of x, restricted to the carrier.
std::vector<Point> grid_around(const Gus& g, const Point& x, const Rational& h, long steps) {
    if (g.finite_carrier) return g.enumerate(0);
    std::vector<Point> out{Point{}};
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::vector<Point> next;
        for (const Point& p : out)
            for (long m = -steps; m <= steps; ++m) {
                Point q = p;
                q.push_back(x[i] + h * Rational(m));
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    std::vector<Point> kept;
    for (Point& p : out)
        if (g.in_carrier(p)) kept.push_back(std::move(p));
    return kept;
}

std::vector<Point> evenly(std::vector<Point> pts, std::size_t cap) {
    if (pts.size() <= cap) return pts;
    std::vector<Point> out;
    for (std::size_t i = 0; i < cap; ++i) out.push_back(pts[i * (pts.size() - 1) / (cap - 1)]);
    return out;
}

}  // namespace

std::vector<Ball> sample_balls(const Gus& g, std::size_t k) {
    std::vector<MetricId> metrics = g.metric_ids();
    if (metrics.size() > 4) metrics.resize(4);
    if (std::find(metrics.begin(), metrics.end(), g.full_metric()) == metrics.end()) metrics.push_back(g.full_metric());
    std::vector<Rational> radii{Rational(1), Rational(1, 2)};
    if (k >= 2) {
        radii.push_back(Rational(2));
        radii.push_back(Rational(1, 4));
    }
    const std::vector<Point> centers = evenly(g.enumerate(g.finite_carrier ? 0 : 1), g.dim <= 1 ? 9 : 25);
    std::vector<Ball> out;
    for (const MetricId& m : metrics)
        for (const Point& c : centers)
            for (const Rational& r : radii) out.push_back(Ball{m, c, r});
    return out;
}

std::vector<Ball> rc_enumerate(const Ball& a, std::size_t k) {
    std::vector<Ball> out;
    for (std::size_t j = 1; j <= k + 1; ++j)
        out.push_back(Ball{a.metric, a.center, a.radius * (Rational(1) - Rational::pow2(-static_cast<long>(j)))});
    return out;
}

std::vector<Ball> wb_enumerate(const Gus& g, const Ball& a, std::size_t k) {
    std::vector<Ball> out;
    const std::size_t jmax = std::min<std::size_t>(k, g.dim <= 1 ? 4 : 2);
    for (std::size_t j = 0; j <= jmax; ++j) {
        const long steps = 1L << j;
        const Rational pitch = a.radius / Rational(steps);
        for (const Point& y : grid_around(g, a.center, pitch, steps)) {
            const DistanceInterval d = metric_eval(g, a.metric, a.center, y, kPrec);
            if (!d.hi.finite() || !(d.hi.value() < a.radius)) continue;
            const Ball b{a.metric, y, (a.radius - d.hi.value()) / Rational(2)};
            if (order(g, b, a, true)) push_unique(out, b);
        }
    }
    for (Ball& b : rc_enumerate(a, k)) push_unique(out, std::move(b));
    return out;
}

Subset<Ball> wb_subset(const Gus& g, const Ball& a) {
    auto s = Subset<Ball>::where([g, a](const Ball& b) { return order(g, b, a, true); },
                                 [g, a](std::size_t k) { return wb_enumerate(g, a, k); });
    s.near = [g, a](const Ball&, std::size_t k) { return wb_enumerate(g, a, k); };
    s.tag = json{{"shrinks", a}};
    return s;
}

Subset<Ball> rc_subset(const Gus& g, const Ball& a) {
    (void)g;
    auto s = Subset<Ball>::where(
        [a](const Ball& b) { return b.metric == a.metric && b.center == a.center && b.radius < a.radius; },
        [a](std::size_t k) { return rc_enumerate(a, k); });
    s.tag = json{{"concentric", a}};
    return s;
}

Subset<Ball> c_body(const Gus& g, const MetricId& d, const Rational& eps, const std::optional<Ball>& below) {
    if (below) {
        const Ball a = *below;
        auto s = Subset<Ball>::where(
            [g, d, eps, a](const Ball& c) { return metric_leq(d, c.metric) && c.radius <= eps && order(g, c, a, false); },
            [g, d, eps, a](std::size_t k) {
                std::vector<Ball> out;
                for (const Ball& b : wb_enumerate(g, a, k)) {
                    Ball c{b.metric.join(d), b.center, min(b.radius, eps)};
                    if (order(g, c, a, false)) push_unique(out, std::move(c));
                }
                return out;
            });
        return s;
    }
    auto around = [g, d, eps](const Ball& anchor) {
        std::vector<Ball> out;
        std::optional<Cell> cell;
        if (g.oracle) cell = g.oracle->enclosing_cell(g, anchor);
        if (cell && !g.finite_carrier) {
            // Pitch ε/(2n) keeps every point within ε of a grid center in either norm.
            const Rational h = eps / Rational(2 * static_cast<long>(std::max<std::size_t>(g.dim, 1)));
            std::vector<Point> pts{Point{}};
            for (std::size_t i = 0; i < g.dim; ++i) {
                std::vector<Point> next;
                const long lo = (cell->lo[i] / h).floor().get_si(), hi = (cell->hi[i] / h).ceil().get_si();
                if (hi - lo > 64) return std::vector<Ball>{};
                for (const Point& p : pts)
                    for (long m = lo; m <= hi; ++m) {
                        Point q = p;
                        q.push_back(h * Rational(m));
                        next.push_back(std::move(q));
                    }
                pts = std::move(next);
                if (pts.size() > 5000) return std::vector<Ball>{};
            }
            for (const Point& p : pts) out.push_back(Ball{d, p, eps});
        } else {
            for (const Point& p : grid_around(g, anchor.center, eps / Rational(2), 4)) out.push_back(Ball{d, p, eps});
        }
        return out;
    };
    auto s = Subset<Ball>::where([d, eps](const Ball& c) { return c.metric == d && c.radius == eps; },
                                 [g, d, eps](std::size_t k) {
                                     std::vector<Ball> out;
                                     for (const Point& p : g.enumerate(k)) out.push_back(Ball{d, p, eps});
                                     return out;
                                 });
    s.near = [around](const Ball& anchor, std::size_t) { return around(anchor); };
    return s;
}

Subset<Ball> point_filter(const Gus& g, const Point& x) {
    return Subset<Ball>::where([g, x](const Ball& c) { return (ball_has(g, c, x, 64) == Verdict::Proved); },
                               [g, x](std::size_t k) {
                                   std::vector<Ball> out;
                                   for (const MetricId& d : g.metric_ids())
                                       for (std::size_t j = 0; j <= k; ++j)
                                           out.push_back(Ball{d, x, Rational::pow2(-static_cast<long>(j))});
                                   return out;
                               });
}

CoverJudgment<Ball> completion_cover(const Gus& g, const Ball& a, const Subset<Ball>& u, std::size_t budget) {
    if (u.contains(a)) return CoverJudgment<Ball>::proved(Trace<Ball>{Rule::Reflexivity, a, std::nullopt, AxiomIndex(), {}, json()});
    if (u.tag.is_object()) {
        for (const char* fam : {"shrinks", "concentric"}) {
            if (!u.tag.contains(fam)) continue;
            const Ball of = u.tag[fam].get<Ball>();
            if (order(g, a, of, false)) {
                Trace<Ball> t{Rule::Plugin, a, std::nullopt, AxiomIndex(), {}, json{{"family", fam}, {"of", of}}};
                return CoverJudgment<Ball>::proved(std::move(t), "contains every shrink of a larger ball");
            }
        }
    }
    std::vector<Ball> cands;
    for (const Ball& c : u.candidates_near(a, budget))
        if (u.contains(c)) push_unique(cands, c);
    for (const Ball& c : cands)
        if (order(g, a, c, false)) {
            Trace<Ball> leaf{Rule::Reflexivity, c, std::nullopt, AxiomIndex(), {}, json()};
            return CoverJudgment<Ball>::proved(Trace<Ball>{Rule::LeqLeft, a, c, AxiomIndex(), {leaf}, json()}, "a ≤_X b");
        }
    if (!g.oracle || !g.oracle->exact()) return CoverJudgment<Ball>::unknown("no exact oracle", budget);
    const CoverDecision d = g.oracle->cover(g, a, cands, budget);
    if (d.verdict == Verdict::Proved) {
        json members = json::array();
        for (const Ball& c : cands) members.push_back(c);
        Trace<Ball> t{Rule::Plugin, a, std::nullopt, AxiomIndex(), {},
                      json{{"members", std::move(members)}, {"cover", d.certificate}}};
        return CoverJudgment<Ball>::proved(std::move(t), "a_* ⊆ ⋃U_*");
    }
    if (d.verdict == Verdict::Refuted && u.finite && d.witness) {
        const Point& x = *d.witness;
        bool sound = (ball_has(g, a, x, budget) == Verdict::Proved);
        for (const Ball& c : cands) sound = sound && (ball_has(g, c, x, budget) == Verdict::Refuted);
        if (sound)
            return CoverJudgment<Ball>::refuted(PointWitness<Ball>{point_filter(g, x), json{{"point", point_to_json(x)}}},
                                                "point of a_* in no member");
    }
    if (d.verdict == Verdict::Refuted)
        return CoverJudgment<Ball>::unknown("no finite subfamily of the enumerated members covers", d.work);
    return CoverJudgment<Ball>::unknown("cover search exhausted", d.work);
}

bool verify_completion_cover(const Gus& g, const Ball& a, const Subset<Ball>& u, const json& c) {
    if (!c.is_object()) return false;
    try {
        if (c.contains("family")) {
            const std::string fam = c["family"].get<std::string>();
            const Ball of = c["of"].get<Ball>();
            return u.tag.is_object() && u.tag.contains(fam) && u.tag[fam].get<Ball>() == of && order(g, a, of, false);
        }
        if (!c.contains("members") || !c.contains("cover") || !g.oracle) return false;
        std::vector<Ball> members;
        for (const auto& m : c["members"]) {
            Ball b = m.get<Ball>();
            if (!u.contains(b)) return false;
            members.push_back(std::move(b));
        }
        return g.oracle->verify_cover(g, a, members, c["cover"]);
    } catch (const std::exception&) {
        return false;
    }
}

CompletionTopology completion_topology(const Gus& g, bool localised) {
    CompletionTopology ct;
    ct.space = g;
    ct.localised = localised;
    FormalTopology<Ball>& t = ct.topology;
    t.name = "U(" + g.name + ")";
    t.base = Base<Ball>::enumerated([g](std::size_t k) { return sample_balls(g, k); });
    t.leq = [g](const Ball& a, const Ball& b) { return order(g, a, b, false); };
    t.axioms.localised = localised;
    t.axioms.index = [g](const Ball&, std::size_t k) {
        std::vector<AxiomIndex> is{json{{"shrink", true}}};
        std::vector<MetricId> ms = g.metric_ids();
        if (ms.size() > 3) ms.resize(3);
        for (const MetricId& d : ms)
            for (std::size_t j = 0; j <= std::min<std::size_t>(k, 3); ++j)
                is.push_back(json{{"uniform", d}, {"eps", Rational::pow2(-static_cast<long>(j))}});
        return is;
    };
    t.axioms.has_index = [g](const Ball&, const AxiomIndex& i) {
        if (!i.is_object()) return false;
        if (i.contains("shrink")) return i.size() == 1 && i["shrink"] == true;
        if (!i.contains("uniform") || !i.contains("eps")) return false;
        try {
            const MetricId d = i["uniform"].get<MetricId>();
            const Rational eps = i["eps"].get<Rational>();
            if (d.gens.empty() || eps.sign() <= 0) return false;
            for (const auto& id : d.gens)
                if (!g.has_generator(id)) return false;
            return true;
        } catch (const std::exception&) {
            return false;
        }
    };
    t.axioms.body = [g, localised](const Ball& a, const AxiomIndex& i) {
        if (i.contains("shrink")) return wb_subset(g, a);
        return c_body(g, i["uniform"].get<MetricId>(), i["eps"].get<Rational>(),
                      localised ? std::optional<Ball>(a) : std::nullopt);
    };
    t.positivity = Subset<Ball>::where([](const Ball&) { return true; });
    t.meets = [g](const Ball& a, const Ball& b) {
        std::vector<Ball> out;
        if (!g.oracle) return out;
        const Judgment m = g.oracle->ball_meets(g, {a, b}, 8);
        if (!m.is_proved()) return out;
        const Point p = parse_point(m.evidence["point"]);
        const MetricId md = a.metric.join(b.metric);
        std::optional<Rational> r;
        for (const Ball* x : {&a, &b}) {
            const DistanceInterval d = metric_eval(g, x->metric, x->center, p, kPrec);
            if (!d.hi.finite() || !(d.hi.value() < x->radius)) return out;
            const Rational room = x->radius - d.hi.value();
            r = r ? min(*r, room) : room;
        }
        Ball c{md, p, *r};
        if (order(g, c, a, false) && order(g, c, b, false)) out.push_back(std::move(c));
        return out;
    };
    FormalTopology<Ball> plain = t;
    t.decide = [g, plain](const Ball& a, const Subset<Ball>& u, std::size_t budget) {
        CoverJudgment<Ball> j = completion_cover(g, a, u, budget);
        if (j.verdict != Verdict::Unknown) return j;
        if (auto tr = detail::backward_search(plain, a, u, std::min<std::size_t>(budget, 3), budget))
            return CoverJudgment<Ball>::proved(std::move(*tr));
        return j;
    };
    t.verify = [g](const Ball& a, const Subset<Ball>& u, const json& c, std::size_t) {
        return verify_completion_cover(g, a, u, c);
    };
    return ct;
}

FormalTopology<Ball> truncated_completion(const Gus& g, std::vector<Ball> balls, bool localised) {
    std::sort(balls.begin(), balls.end());
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    auto all = std::make_shared<const std::vector<Ball>>(balls);
    FormalTopology<Ball> t;
    t.name = "U(" + g.name + ")|finite";
    t.base = Base<Ball>::of(balls);
    t.leq = [g](const Ball& a, const Ball& b) { return order(g, a, b, false); };
    t.axioms.localised = localised;
    std::vector<std::pair<MetricId, Rational>> rad;
    for (const Ball& b : balls)
        if (std::find(rad.begin(), rad.end(), std::make_pair(b.metric, b.radius)) == rad.end())
            rad.emplace_back(b.metric, b.radius);
    t.axioms.index = [rad](const Ball&, std::size_t) {
        std::vector<AxiomIndex> is{json{{"shrink", true}}};
        for (const auto& [d, e] : rad) is.push_back(json{{"uniform", d}, {"eps", e}});
        return is;
    };
    t.axioms.body = [g, all, localised](const Ball& a, const AxiomIndex& i) {
        std::vector<Ball> out;
        if (i.contains("shrink")) {
            for (const Ball& b : *all)
                if (order(g, b, a, true)) out.push_back(b);
            return Subset<Ball>::of(std::move(out));
        }
        const MetricId d = i["uniform"].get<MetricId>();
        const Rational eps = i["eps"].get<Rational>();
        std::vector<Ball> cde;
        for (const Ball& b : *all)
            if (b.metric == d && b.radius == eps) cde.push_back(b);
        if (!localised) return Subset<Ball>::of(std::move(cde));
        for (const Ball& c : *all) {
            if (!order(g, c, a, false)) continue;
            for (const Ball& b : cde)
                if (order(g, c, b, false)) {
                    out.push_back(c);
                    break;
                }
        }
        return Subset<Ball>::of(std::move(out));
    };
    return t;
}

Judgment sq_below(const Gus& g, const std::vector<Ball>& u, const std::vector<Ball>& v, std::size_t budget) {
    if (!g.oracle || !g.oracle->exact()) throw OracleMissing("sq_below needs an exact spatial oracle");
    MetricId d = g.full_metric();
    // Every c ≤_X a ≤_X v already lies below V.
    json direct = json::array();
    for (const Ball& a : u)
        for (std::size_t i = 0; i < v.size(); ++i)
            if (ball_leq(g, a, v[i], false, budget) == Verdict::Proved) {
                direct.push_back(i);
                break;
            }
    if (direct.size() == u.size())
        return Judgment::proved("each element of U is below a member of V", {{"metric", d}, {"eps", Rational(1)}, {"below", direct}});
    for (const Ball& a : u) {
        const CoverDecision plain = g.oracle->cover(g, a, v, budget);
        if (plain.verdict == Verdict::Refuted && plain.witness) {
            const Point& x = *plain.witness;
            bool sound = (ball_has(g, a, x, budget) == Verdict::Proved);
            for (const Ball& b : v) sound = sound && (ball_has(g, b, x, budget) == Verdict::Refuted);
            if (sound)
                return Judgment::refuted("a point of U_* lies in no member of V",
                                         {{"element", a}, {"point", point_to_json(x)}});
        }
    }
    for (std::size_t j = 0; j <= std::min<std::size_t>(budget, 16); ++j) {
        const Rational eps = Rational::pow2(-static_cast<long>(j));
        std::vector<Ball> shrunk;
        json parents = json::array();
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i].radius > eps) {
                shrunk.push_back(Ball{v[i].metric, v[i].center, v[i].radius - eps});
                parents.push_back(i);
            }
        bool ok = true;
        json certs = json::array();
        for (const Ball& a : u) {
            const CoverDecision c = g.oracle->cover(g, a, shrunk, budget);
            if (c.verdict != Verdict::Proved) {
                ok = false;
                break;
            }
            certs.push_back(c.certificate);
        }
        if (ok)
            return Judgment::proved("U_* covered by V shrunk by ε",
                                    {{"metric", d}, {"eps", eps}, {"shrunk", shrunk}, {"parents", parents}, {"covers", certs}});
    }
    return Judgment::unknown("no dyadic ε found", budget);
}

Judgment w_member(const Gus& g, const std::vector<std::pair<MetricId, Ball>>& a, std::size_t budget) {
    if (a.empty()) return Judgment::unknown("empty family", 0);
    auto common = [&](const Point& x) {
        if (!g.in_carrier(x)) return false;
        for (const auto& [tag, b] : a)
            if (!(ball_has(g, b, x, budget) == Verdict::Proved)) return false;
        return true;
    };
    for (const auto& [tag, b] : a)
        if (common(b.center)) return Judgment::proved("a center is common", {{"point", point_to_json(b.center)}});
    Rational smallest = a[0].second.radius;
    for (const auto& [tag, b] : a) smallest = min(smallest, b.radius);
    if (g.oracle) {
        try {
            for (std::size_t j = 1; j <= 3; ++j)
                for (const Point& x : g.oracle->eps_net(g, g.full_metric(), smallest * Rational::pow2(-static_cast<long>(j))))
                    if (common(x)) return Judgment::proved("net point is common", {{"point", point_to_json(x)}});
        } catch (const NotTotallyBounded&) {
        }
        std::vector<Ball> balls;
        for (const auto& [tag, b] : a) balls.push_back(b);
        const Judgment m = g.oracle->ball_meets(g, balls, budget);
        if (m.is_proved() && common(parse_point(m.evidence["point"])))
            return Judgment::proved("common point", {{"point", m.evidence["point"]}});
        if (m.is_refuted() && g.oracle->exact()) return Judgment::refuted("the balls have no common point");
    }
    return Judgment::unknown("no common point found", budget);
}

}  // namespace lcomp
