// SPDX-License-Identifier: Apache-2.0
#include "lcomp/maps.hpp"

#include <algorithm>

namespace lcomp {

using BallPair = std::pair<Ball, Ball>;

std::pair<std::string, std::string> split_pair_id(const std::string& id) {
    if (id.size() < 5 || id.front() != '(' || id.back() != ')') throw std::invalid_argument("not a product generator: " + id);
    int depth = 0;
    for (std::size_t i = 1; i + 1 < id.size(); ++i) {
        if (id[i] == '(') ++depth;
        else if (id[i] == ')') --depth;
        else if (id[i] == ',' && depth == 0) return {id.substr(1, i - 1), id.substr(i + 1, id.size() - i - 2)};
    }
    throw std::invalid_argument("not a product generator: " + id);
}

std::pair<MetricId, MetricId> split_pair_metric(const MetricId& m) {
    std::vector<std::string> a, b;
    for (const auto& id : m.gens) {
        auto [x, y] = split_pair_id(id);
        a.push_back(std::move(x));
        b.push_back(std::move(y));
    }
    return {MetricId(std::move(a)), MetricId(std::move(b))};
}

namespace {

MetricId pair_metric(const MetricId& d, const MetricId& rho) {
    std::vector<std::string> ids;
    for (const auto& g : d.gens)
        for (const auto& h : rho.gens) ids.push_back("(" + g + "," + h + ")");
    return MetricId(std::move(ids));
}

Point head(const Point& p, std::size_t n) { return Point(p.begin(), p.begin() + static_cast<long>(n)); }
Point tail(const Point& p, std::size_t n) { return Point(p.begin() + static_cast<long>(n), p.end()); }

Point concat(Point a, const Point& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<Rational> growths(std::size_t k) {
    std::vector<Rational> out;
    for (std::size_t j = 0; j <= std::min<std::size_t>(k, 6); ++j) out.push_back(Rational(1) + Rational::pow2(-static_cast<long>(j)));
    return out;
}

TopologyMap<Ball, Ball> projection(const Gus& prod, const Gus& side, bool first, std::size_t dx) {
    TopologyMap<Ball, Ball> r;
    r.name = first ? "r_X" : "r_Y";
    auto part = [first, dx](const Ball& c) {
        const auto [d, rho] = split_pair_metric(c.metric);
        return Ball{first ? d : rho, first ? head(c.center, dx) : tail(c.center, dx), c.radius};
    };
    r.relates = [side, part](const Ball& c, const Ball& a, std::size_t k) { return ball_leq(side, part(c), a, true, k); };
    r.image = [part](const Ball& c, std::size_t k) {
        std::vector<Ball> out;
        const Ball p = part(c);
        for (const Rational& g : growths(k)) out.push_back(Ball{p.metric, p.center, p.radius * g});
        return out;
    };
    r.fiber = [prod, r](const Ball& a, std::size_t k) {
        std::vector<Ball> out;
        for (const Ball& c : sample_balls(prod, k))
            if (r.holds(c, a, k)) out.push_back(c);
        return out;
    };
    r.fiber_near = [prod](const Ball& anchor, const Ball&, std::size_t k) {
        std::vector<Ball> out{anchor};
        for (Ball& b : wb_enumerate(prod, anchor, std::min<std::size_t>(k, 2))) out.push_back(std::move(b));
        return out;
    };
    return r;
}

// Box region of a rectangle a × b, when both sides are box-shaped.
std::optional<Region> rectangle(const Gus& x, const Gus& y, const BallPair& p) {
    if (!x.oracle || !y.oracle) return std::nullopt;
    const auto rx = x.oracle->region(x, p.first), ry = y.oracle->region(y, p.second);
    if (!rx || !ry || !rx->disks.empty() || !ry->disks.empty()) return std::nullopt;
    Region r;
    r.box = rx->box;
    r.box.insert(r.box.end(), ry->box.begin(), ry->box.end());
    return r;
}

}  // namespace

ProductIso product_iso_witnesses(const Gus& x, const Gus& y) {
    ProductIso iso;
    iso.product = gus_product(x, y);
    const std::size_t dx = x.dim;
    iso.r_x = projection(iso.product, x, true, dx);
    iso.r_y = projection(iso.product, y, false, dx);
    const Gus prod = iso.product;
    iso.r.name = "r";
    iso.r.relates = [x, y, dx](const BallPair& ab, const Ball& c, std::size_t k) {
        const auto [d, rho] = split_pair_metric(c.metric);
        const Verdict vx = ball_leq(x, ab.first, Ball{d, head(c.center, dx), c.radius}, true, k);
        if (vx == Verdict::Refuted) return vx;
        return both(vx, ball_leq(y, ab.second, Ball{rho, tail(c.center, dx), c.radius}, true, k));
    };
    iso.r.image = [](const BallPair& ab, std::size_t k) {
        std::vector<Ball> out;
        const MetricId m = pair_metric(ab.first.metric, ab.second.metric);
        const Rational xi = max(ab.first.radius, ab.second.radius);
        for (const Rational& g : growths(k)) out.push_back(Ball{m, concat(ab.first.center, ab.second.center), xi * g});
        return out;
    };
    iso.r.fiber_near = [](const BallPair& anchor, const Ball&, std::size_t k) {
        std::vector<BallPair> out{anchor};
        const auto ra = rc_enumerate(anchor.first, std::min<std::size_t>(k, 3));
        const auto rb = rc_enumerate(anchor.second, std::min<std::size_t>(k, 3));
        for (std::size_t i = 0; i < ra.size(); ++i) out.emplace_back(ra[i], rb[i]);
        return out;
    };
    return iso;
}

FormalTopology<BallPair> completion_pair_topology(const Gus& x, const Gus& y) {
    const CompletionTopology ux = completion_topology(x), uy = completion_topology(y);
    FormalTopology<BallPair> t = binary_product(ux.topology, uy.topology).topology;
    const FormalTopology<BallPair> plain = t;
    t.decide = [x, y, plain](const BallPair& p, const Subset<BallPair>& u, std::size_t budget) {
        std::vector<BallPair> cands;
        for (const BallPair& c : u.candidates_near(p, budget))
            if (u.contains(c) && std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(c);
        for (const BallPair& c : cands)
            if (plain.leq(p, c)) {
                Trace<BallPair> leaf{Rule::Reflexivity, c, std::nullopt, AxiomIndex(), {}, json()};
                return CoverJudgment<BallPair>::proved(Trace<BallPair>{Rule::LeqLeft, p, c, AxiomIndex(), {leaf}, json()});
            }
        const auto target = rectangle(x, y, p);
        std::vector<Region> members;
        bool boxes = target.has_value();
        for (const BallPair& c : cands) {
            const auto r = rectangle(x, y, c);
            if (!r) boxes = false;
            else members.push_back(*r);
        }
        if (boxes) {
            const RegionCover rc = region_cover(*target, members, std::min<std::size_t>(12 + 2 * budget, 48));
            if (rc.verdict == Verdict::Proved) {
                json ms = json::array();
                for (const BallPair& c : cands) ms.push_back(json(c));
                return CoverJudgment<BallPair>::proved(
                    Trace<BallPair>{Rule::Plugin, p, std::nullopt, AxiomIndex(), {}, json{{"members", ms}, {"cover", rc.certificate}}},
                    "rectangle cover");
            }
            if (rc.verdict == Verdict::Refuted && u.finite) {
                const Point w = *rc.witness;
                const Point wx = head(w, x.dim), wy = tail(w, x.dim);
                auto alpha = Subset<BallPair>::where([x, y, wx, wy](const BallPair& c) {
                    return (ball_has(x, c.first, wx, 64) == Verdict::Proved) && (ball_has(y, c.second, wy, 64) == Verdict::Proved);
                });
                bool sound = alpha.contains(p);
                for (const BallPair& c : cands) sound = sound && !alpha.contains(c);
                if (sound)
                    return CoverJudgment<BallPair>::refuted(PointWitness<BallPair>{alpha, json{{"point", point_to_json(w)}}},
                                                            "point of the rectangle in no member");
            }
        }
        if (auto tr = detail::backward_search(plain, p, u, std::min<std::size_t>(budget, 2), budget))
            return CoverJudgment<BallPair>::proved(std::move(*tr));
        return CoverJudgment<BallPair>::unknown("rectangle cover undecided", budget);
    };
    t.verify = [x, y](const BallPair& p, const Subset<BallPair>& u, const json& c, std::size_t) {
        try {
            const auto target = rectangle(x, y, p);
            if (!target || !c.contains("members")) return false;
            std::vector<Region> members;
            for (const auto& m : c["members"]) {
                const BallPair q = m.get<BallPair>();
                const auto r = rectangle(x, y, q);
                if (!u.contains(q) || !r) return false;
                members.push_back(*r);
            }
            return verify_region_cover(*target, members, c["cover"]);
        } catch (const std::exception&) {
            return false;
        }
    };
    return t;
}

Judgment check_product_iso(const ProductIso& iso, const Gus& x, const Gus& y, std::size_t samples, std::size_t budget) {
    const Gus& prod = iso.product;
    const CompletionTopology uxy = completion_topology(prod);
    const FormalTopology<BallPair> pairs = completion_pair_topology(x, y);
    const auto angle = pairing(uxy.topology, iso.r_x, iso.r_y);
    const auto round1 = map_compose(angle, iso.r);   // U(X×Y) → U(X×Y)
    const auto round2 = map_compose(iso.r, angle);   // U(X)×U(Y) → U(X)×U(Y)
    std::size_t checked = 0;
    bool incomplete = false;
    auto fail = [](const char* what, const json& where) { return Judgment::refuted(what, where); };

    std::vector<Ball> cs = sample_balls(prod, 0);
    if (cs.size() > samples) cs.resize(samples);
    for (const Ball& c : cs) {
        for (const Ball& s : rc_enumerate(c, 2)) {
            const Verdict v = round1.relates(s, c, budget);
            if (v == Verdict::Refuted) return fail("shrink not related by r∘⟨r_X,r_Y⟩", {{"shrink", s}, {"ball", c}});
            incomplete = incomplete || v == Verdict::Unknown;
            ++checked;
        }
        for (const Ball& big : {c, Ball{c.metric, c.center, c.radius * Rational(2)}}) {
            if (round1.relates(big, c, budget) != Verdict::Proved) continue;
            const auto j = cover_check(uxy.topology, big, Subset<Ball>::of({c}), budget);
            if (j.is_refuted()) return fail("r∘⟨r_X,r_Y⟩ relates a ball not covered by the target", {{"ball", big}, {"target", c}});
            incomplete = incomplete || !j.is_proved();
            ++checked;
        }
    }

    std::vector<Ball> as = sample_balls(x, 0), bs = sample_balls(y, 0);
    std::vector<BallPair> ps;
    for (std::size_t i = 0; i < as.size() && ps.size() < samples; ++i)
        ps.emplace_back(as[i], bs[(i * 7) % bs.size()]);
    for (const BallPair& p : ps) {
        // The round trip relates small squares deep inside p; they must cover a shrink of p.
        const BallPair s{rc_enumerate(p.first, 1).back(), rc_enumerate(p.second, 1).back()};
        const Rational eta = min(p.first.radius, p.second.radius) / Rational(4);
        std::vector<BallPair> squares;
        const auto cx = x.oracle ? x.oracle->enclosing_cell(x, s.first) : std::nullopt;
        const auto cy = y.oracle ? y.oracle->enclosing_cell(y, s.second) : std::nullopt;
        if (!cx || !cy || x.dim != 1 || y.dim != 1) {
            incomplete = true;
            continue;
        }
        for (Rational u = cx->lo[0]; u <= cx->hi[0]; u += eta)
            for (Rational w = cy->lo[0]; w <= cy->hi[0]; w += eta) {
                const BallPair q{Ball{p.first.metric, Point{u}, eta}, Ball{p.second.metric, Point{w}, eta}};
                if (round2.relates(q, p, budget) == Verdict::Proved) squares.push_back(q);
            }
        const auto j = cover_check(pairs, s, Subset<BallPair>::of(squares), budget);
        if (j.is_refuted()) return fail("shrink of a rectangle not covered through ⟨r_X,r_Y⟩∘r", {{"pair", json(p)}});
        incomplete = incomplete || !j.is_proved();
        ++checked;
        const BallPair big{Ball{p.first.metric, p.first.center, p.first.radius * Rational(2)},
                           Ball{p.second.metric, p.second.center, p.second.radius * Rational(2)}};
        for (const BallPair& q : {p, big}) {
            if (round2.relates(q, p, budget) != Verdict::Proved) continue;
            const auto k = cover_check(pairs, q, Subset<BallPair>::of({p}), budget);
            if (k.is_refuted()) return fail("⟨r_X,r_Y⟩∘r relates a rectangle not covered by the target", {{"pair", json(q)}});
            incomplete = incomplete || !k.is_proved();
            ++checked;
        }
    }
    if (incomplete) return Judgment::unknown("some iso instances undecided", budget);
    return Judgment::proved("iso equations hold on samples", {{"checked", checked}});
}

}  // namespace lcomp
