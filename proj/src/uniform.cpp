// SPDX-License-Identifier: Apache-2.0
#include "lcomp/uniform.hpp"

#include <algorithm>

namespace lcomp {

namespace {

Rational dyadic(std::size_t k) { return Rational::pow2(-static_cast<long>(k)); }

constexpr std::size_t kCoverDepth = 24;
constexpr std::size_t kMaxScale = 64;

const SpatialOracle& exact_oracle(const Gus& g) {
    if (!g.oracle || !g.oracle->exact()) throw OracleMissing("'" + g.name + "' has no exact oracle");
    return *g.oracle;
}

// Metric whose balls are coordinate boxes, when the space is a box carrier.
std::optional<MetricId> box_metric(const Gus& g) {
    if (!g.box || g.finite_carrier) return std::nullopt;
    for (const auto& gen : g.generators)
        if (gen.shape == GeneratorMetric::Shape::None) return std::nullopt;
    for (const auto& gen : g.generators)
        if (gen.shape == GeneratorMetric::Shape::Sup) return MetricId{gen.id};
    return std::nullopt;
}

bool is_box(const Region& r) { return r.disks.empty(); }

// {x ∈ K | b(x, ε) meets the cell}, for box balls b.
Region touching(const Cell& c, const Rational& eps, const std::vector<AxisRange>& k) {
    Region r;
    for (std::size_t i = 0; i < k.size(); ++i)
        r.box.push_back(k[i].meet(AxisRange::open(c.lo[i] - eps, c.hi[i] + eps)));
    return r;
}

// {x ∈ K | b(x, ε) ∩ K ⊆ u}, for a box region u.
Region inner(const Region& u, const Rational& eps, const std::vector<AxisRange>& k) {
    Region r;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const AxisRange& a = u.box[i];
        AxisRange s = k[i];
        if (a.lo && !(k[i].lo && *a.lo <= *k[i].lo)) s = s.meet(AxisRange{*a.lo + eps, std::nullopt, true, false});
        if (a.hi && !(k[i].hi && *k[i].hi <= *a.hi)) s = s.meet(AxisRange{std::nullopt, *a.hi - eps, false, true});
        r.box.push_back(s);
    }
    return r;
}

struct Lebesgue {
    Region target;
    std::vector<Region> members;
};

// Every b(x, ε) meeting a_* lies inside some member: target ⊆ ⋃ members.
std::optional<Lebesgue> lebesgue_problem(const Gus& g, const Ball& a, const std::vector<Ball>& us, const Rational& eps) {
    const auto ra = g.oracle->region(g, a);
    if (!ra) return std::nullopt;
    const auto cell = bounding_cell(*ra);
    if (!cell) return std::nullopt;
    Lebesgue p{touching(*cell, eps, *g.box), {}};
    for (const Ball& u : us) {
        const auto ru = g.oracle->region(g, u);
        if (ru && is_box(*ru)) p.members.push_back(inner(*ru, eps, *g.box));
    }
    return p;
}

std::optional<json> lebesgue_cover(const Gus& g, const Ball& a, const std::vector<Ball>& us, const Rational& eps) {
    const auto p = lebesgue_problem(g, a, us, eps);
    if (!p) return std::nullopt;
    const RegionCover rc = region_cover(p->target, p->members, kCoverDepth);
    if (rc.verdict != Verdict::Proved) return std::nullopt;
    return rc.certificate;
}

bool lebesgue_verify(const Gus& g, const Ball& a, const std::vector<Ball>& us, const Rational& eps, const json& cert) {
    const auto p = lebesgue_problem(g, a, us, eps);
    return p && verify_region_cover(p->target, p->members, cert);
}

// Closure of a box-and-disk region.
bool in_closure(const Region& r, const Point& p) {
    for (std::size_t i = 0; i < r.box.size(); ++i) {
        AxisRange c = r.box[i];
        c.lo_closed = c.hi_closed = true;
        if (!c.contains(p[i])) return false;
    }
    for (const Disk& d : r.disks)
        if (d.r2 < squared_distance(p, d.center)) return false;
    return true;
}

std::vector<Point> sample_centers(const Gus& g, std::size_t budget) {
    const std::vector<Point> all = g.enumerate(g.finite_carrier ? 0 : budget);
    if (g.finite_carrier || all.size() <= 9) return all;
    std::vector<Point> out;
    for (std::size_t i = 0; i < 9; ++i) out.push_back(all[i * (all.size() - 1) / 8]);
    return out;
}

std::vector<Ball> members_of(const json& j) {
    std::vector<Ball> out;
    for (const auto& m : j) out.push_back(m.get<Ball>());
    return out;
}

}  // namespace

Subset<Ball> uniform_cover(const Gus& g, const MetricId& d, const Rational& eps) {
    Subset<Ball> s;
    s.contains = [g, d, eps](const Ball& b) { return b.metric == d && b.radius == eps && g.in_carrier(b.center); };
    s.enumerate = [g, d, eps](std::size_t k) {
        std::vector<Ball> out;
        for (const Point& x : g.enumerate(k)) out.push_back(Ball{d, x, eps});
        return out;
    };
    s.tag = json{{"C", {{"metric", d}, {"eps", eps}}}};
    return s;
}

Judgment st_member(const Gus& g, const Ball& c, const MetricId& d, const Rational& eps, const Ball& a,
                   std::size_t budget) {
    if (!(c.metric == d) || c.radius != eps) throw std::invalid_argument("ball " + c.str() + " is not in C_d^ε");
    return g.require_oracle().ball_meets(g, {c, a}, budget);
}

Judgment star_refines(const Gus& g, const MetricId& fd, const Rational& fe, const MetricId& cd, const Rational& ce,
                      std::size_t budget) {
    const SpatialOracle& o = exact_oracle(g);
    const std::vector<Point> centers = sample_centers(g, budget);
    std::size_t checked = 0;
    for (const Point& z : centers) {
        const Ball a{fd, z, fe};
        if (g.finite_carrier) {
            std::vector<Ball> star;
            for (const Point& x : centers) {
                const Ball c{fd, x, fe};
                if (o.ball_meets(g, {c, a}, budget).is_proved()) star.push_back(c);
            }
            bool found = false;
            for (const Point& y : centers) {
                const Ball coarse{cd, y, ce};
                found = std::all_of(star.begin(), star.end(),
                                    [&](const Ball& c) { return o.ball_subset(g, c, coarse, budget).is_proved(); });
                if (found) break;
            }
            if (!found) return Judgment::refuted("star lies under no coarse member", {{"ball", a}});
            ++checked;
            continue;
        }
        // The star of a lies in b(z, 3ε).
        if (o.ball_subset(g, Ball{fd, z, fe * Rational(3)}, Ball{cd, z, ce}, budget).is_proved()) {
            ++checked;
            continue;
        }
        // Two star points along an axis, too far apart for one coarse ball.
        if (ce < fe * Rational(3)) {
            const Rational t = mid(ce, fe * Rational(3));
            const Rational s = mid(max(Rational(0), t - fe), fe * Rational(2));
            for (std::size_t i = 0; i < z.size(); ++i) {
                Point p = z, q = z, wp = z, wq = z;
                p[i] += t;
                q[i] -= t;
                wp[i] += s;
                wq[i] -= s;
                if (!g.in_carrier(p) || !g.in_carrier(q) || !g.in_carrier(wp) || !g.in_carrier(wq)) continue;
                const Ball cp{fd, wp, fe}, cq{fd, wq, fe};
                const bool in_star = o.ball_meets(g, {cp, a}, budget).is_proved() &&
                                     o.ball_meets(g, {cq, a}, budget).is_proved() &&
                                     ball_has(g, cp, p, budget) == Verdict::Proved &&
                                     ball_has(g, cq, q, budget) == Verdict::Proved;
                if (in_star && g.symmetric() && metric_compare(g, cd, p, q, ce + ce, true, 32) == Verdict::Refuted)
                    return Judgment::refuted("star spans two points no coarse ball holds",
                                             {{"ball", a}, {"p", point_to_json(p)}, {"q", point_to_json(q)}});
            }
        }
        return Judgment::unknown("no coarse member found for the star of " + a.str(), budget);
    }
    return Judgment::proved("stars of sampled members refine", {{"checked", checked}});
}

Judgment prec(const Gus& g, const Ball& a, const Ball& b, std::size_t budget) {
    const SpatialOracle& o = exact_oracle(g);
    if (g.finite_carrier) {
        const std::vector<Point> pts = g.enumerate(0);
        const MetricId d = g.full_metric();
        for (const Point& x : pts)
            if (ball_has(g, a, x, budget) == Verdict::Proved && ball_has(g, b, x, budget) == Verdict::Refuted)
                return Judgment::refuted("a point of a_* outside b_*", {{"point", point_to_json(x)}});
        for (std::size_t j = 0; j <= kMaxScale; ++j) {
            const Rational eps = dyadic(j);
            bool ok = true;
            for (const Point& x : pts) {
                const Ball c{d, x, eps};
                if (o.ball_meets(g, {c, a}, budget).is_proved() && !o.ball_subset(g, c, b, budget).is_proved()) {
                    ok = false;
                    break;
                }
            }
            if (ok) return Judgment::proved("every C_d^ε member meeting a lies in b", {{"metric", d}, {"eps", eps}});
        }
        return Judgment::unknown("no scale found", budget);
    }
    const auto s = box_metric(g);
    const auto ra = o.region(g, a), rb = o.region(g, b);
    if (!s || !ra || !rb) return Judgment::unknown("prec needs box geometry", budget);
    const auto cell = bounding_cell(*ra);
    if (!cell) return Judgment::unknown("a has no bounding cell", budget);

    Region closed;
    for (std::size_t i = 0; i < g.dim; ++i) closed.box.push_back(g.box->at(i).meet(AxisRange::closed(cell->lo[i], cell->hi[i])));
    const RegionCover cl = region_cover(closed, {*rb}, kCoverDepth);
    if (cl.verdict == Verdict::Refuted && cl.witness && in_closure(*ra, *cl.witness) && !rb->contains(*cl.witness) &&
        g.in_carrier(*cl.witness))
        return Judgment::refuted("the closure of a_* leaves b_*", {{"point", point_to_json(*cl.witness)}});

    // Only a proved closure inclusion guarantees some scale works.
    const std::size_t scales = cl.verdict == Verdict::Proved ? kMaxScale : budget + 6;
    for (std::size_t j = 0; j <= scales; ++j) {
        const Rational eps = dyadic(j);
        std::optional<json> cert;
        if (is_box(*rb)) {
            cert = lebesgue_cover(g, a, {b}, eps);
        } else {
            Region grown = touching(*cell, eps + eps, *g.box);
            const RegionCover rc = region_cover(grown, {*rb}, kCoverDepth);
            if (rc.verdict == Verdict::Proved) cert = rc.certificate;
        }
        if (cert) return Judgment::proved("every C_d^ε member meeting a lies in b", {{"metric", *s}, {"eps", eps}});
    }
    return Judgment::unknown("no scale found", budget);
}

CoverJudgment<Ball> pf_cover_check(const Gus& g, const Ball& a, const Subset<Ball>& u, std::size_t budget) {
    const SpatialOracle& o = exact_oracle(g);
    if (u.contains(a)) return CoverJudgment<Ball>::proved(Trace<Ball>{Rule::Reflexivity, a, std::nullopt, AxiomIndex(), {}, json()});
    if (u.tag.is_object() && u.tag.contains("C")) {
        const json& c = u.tag["C"];
        return CoverJudgment<Ball>::proved(
            Trace<Ball>{Rule::Plugin, a, std::nullopt, AxiomIndex(), {},
                        json{{"axiom", "uniform"}, {"metric", c["metric"]}, {"eps", c["eps"]}}},
            "covering axiom");
    }
    std::vector<Ball> cands;
    for (const Ball& c : u.candidates_near(a, budget))
        if (u.contains(c) && std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(c);
    for (const Ball& c : cands)
        if (o.ball_subset(g, a, c, budget).is_proved()) {
            Trace<Ball> leaf{Rule::Reflexivity, c, std::nullopt, AxiomIndex(), {}, json()};
            return CoverJudgment<Ball>::proved(Trace<Ball>{Rule::LeqLeft, a, c, AxiomIndex(), {leaf}, json()}, "a ⪯ b");
        }
    json members = json::array();
    for (const Ball& c : cands) members.push_back(c);

    if (box_metric(g)) {
        const MetricId s = *box_metric(g);
        for (std::size_t j = 0; j <= budget + 6; ++j)
            if (auto cert = lebesgue_cover(g, a, cands, dyadic(j)))
                return CoverJudgment<Ball>::proved(
                    Trace<Ball>{Rule::Plugin, a, std::nullopt, AxiomIndex(), {},
                                json{{"rule", "uniform"}, {"metric", s}, {"eps", dyadic(j)}, {"members", members}, {"cover", *cert}}},
                    "Lebesgue scale for U");
    }

    const CoverDecision d = o.cover(g, a, cands, budget);
    if (d.verdict == Verdict::Proved && box_metric(g)) {
        // Shrinks of a have a Lebesgue scale inside ⋃U.
        json inst = json::array();
        for (std::size_t k = 1; k <= 3; ++k) {
            const Ball bk{a.metric, a.center, a.radius * (Rational(1) - dyadic(k))};
            std::optional<json> cert;
            Rational eps;
            for (std::size_t j = 0; j <= kMaxScale && !cert; ++j) {
                eps = dyadic(j);
                cert = lebesgue_cover(g, bk, cands, eps);
            }
            if (!cert) return CoverJudgment<Ball>::unknown("no Lebesgue scale for a shrink of a", d.work);
            inst.push_back(json{{"k", k}, {"eps", eps}, {"cover", *cert}});
        }
        return CoverJudgment<Ball>::proved(
            Trace<Ball>{Rule::Plugin, a, std::nullopt, AxiomIndex(), {},
                        json{{"rule", "inclusion"}, {"members", members}, {"cover", d.certificate}, {"instances", std::move(inst)}}},
            "a_* ⊆ ⋃U_*, with Lebesgue scales for shrinks");
    }
    if (d.verdict == Verdict::Refuted && u.finite && d.witness) {
        const Point& x = *d.witness;
        bool sound = ball_has(g, a, x, budget) == Verdict::Proved;
        for (const Ball& c : cands) sound = sound && ball_has(g, c, x, budget) == Verdict::Refuted;
        if (sound)
            return CoverJudgment<Ball>::refuted(PointWitness<Ball>{point_filter(g, x), json{{"point", point_to_json(x)}}},
                                                "point of a_* in no member");
    }
    return CoverJudgment<Ball>::unknown("no pf derivation found", budget);
}

bool verify_pf_certificate(const Gus& g, const Ball& a, const Subset<Ball>& u, const json& c) {
    try {
        exact_oracle(g);
        if (c.contains("axiom")) {
            return c["axiom"] == "uniform" && u.tag.is_object() && u.tag.contains("C") && u.tag["C"]["metric"] == c["metric"] &&
                   u.tag["C"]["eps"] == c["eps"];
        }
        const std::vector<Ball> ms = members_of(c.at("members"));
        for (const Ball& m : ms)
            if (!u.contains(m)) return false;
        if (!box_metric(g)) return false;
        const std::string rule = c.at("rule").get<std::string>();
        if (rule == "uniform") return lebesgue_verify(g, a, ms, c.at("eps").get<Rational>(), c.at("cover"));
        if (rule != "inclusion" || !g.oracle->verify_cover(g, a, ms, c.at("cover"))) return false;
        for (const auto& i : c.at("instances")) {
            const std::size_t k = i.at("k").get<std::size_t>();
            if (k == 0) return false;
            const Ball bk{a.metric, a.center, a.radius * (Rational(1) - dyadic(k))};
            if (!lebesgue_verify(g, bk, ms, i.at("eps").get<Rational>(), i.at("cover"))) return false;
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

Judgment r_x(const Gus& g, const Ball& a, const Ball& b, std::size_t budget) {
    const SpatialOracle& o = exact_oracle(g);
    std::vector<Point> centers;
    if (const auto cell = o.enclosing_cell(g, a)) {
        Point m;
        for (std::size_t i = 0; i < cell->lo.size(); ++i) m.push_back(mid(cell->lo[i], cell->hi[i]));
        if (g.in_carrier(m)) centers.push_back(m);
    }
    centers.push_back(b.center);
    centers.push_back(a.center);
    for (const Point& y : centers) {
        // Largest room: b' <_X b needs δ < ε − ρ(y, c_b).
        const DistanceInterval off = metric_eval(g, b.metric, b.center, y, 32);
        if (!off.hi.finite() || !(off.hi.value() < b.radius)) continue;
        const Rational room = b.radius - off.hi.value();
        // δ = room − 2^-j, growing toward the room.
        for (std::size_t j = 2; j <= budget + 8; ++j) {
            if (!(dyadic(j) < room)) continue;
            const Ball bp{b.metric, y, room - dyadic(j)};
            if (ball_leq(g, bp, b, true, budget) != Verdict::Proved) continue;
            const Judgment inc = o.ball_subset(g, a, bp, budget);
            if (inc.is_proved()) return Judgment::proved("a_* ⊆ b'_* with b' <_X b", {{"via", bp}, {"inclusion", inc.evidence}});
        }
    }
    return Judgment::unknown("no intermediate ball found", budget);
}

UniformTopology uniform_topology(const Gus& g) {
    exact_oracle(g);
    UniformTopology ut;
    ut.space = g;
    FormalTopology<Ball>& t = ut.topology;
    t.name = "S(" + g.name + ")";
    t.base = Base<Ball>::enumerated([g](std::size_t k) { return sample_balls(g, k); });
    t.leq = [g](const Ball& a, const Ball& b) { return g.oracle->ball_subset(g, a, b, 16).is_proved(); };
    t.axioms.localised = false;
    t.axioms.index = [g](const Ball&, std::size_t k) {
        std::vector<AxiomIndex> is{json{{"inclusion", true}}};
        std::vector<MetricId> ms = g.metric_ids();
        if (ms.size() > 3) ms.resize(3);
        for (const MetricId& d : ms)
            for (std::size_t j = 0; j <= std::min<std::size_t>(k, 3); ++j) is.push_back(json{{"uniform", d}, {"eps", dyadic(j)}});
        return is;
    };
    t.axioms.body = [g](const Ball& a, const AxiomIndex& i) {
        if (i.contains("inclusion"))
            return Subset<Ball>::where([g, a](const Ball& b) { return prec(g, b, a, 8).is_proved(); },
                                       [a](std::size_t k) { return rc_enumerate(a, k); });
        return uniform_cover(g, i["uniform"].get<MetricId>(), i["eps"].get<Rational>());
    };
    t.decide = [g](const Ball& a, const Subset<Ball>& u, std::size_t k) { return pf_cover_check(g, a, u, k); };
    t.verify = [g](const Ball& a, const Subset<Ball>& u, const json& c, std::size_t) {
        return verify_pf_certificate(g, a, u, c);
    };
    t.positivity = Subset<Ball>::where([](const Ball&) { return true; });
    return ut;
}

}  // namespace lcomp
