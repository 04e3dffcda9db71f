// SPDX-License-Identifier: Apache-2.0
#include "lcomp/gus.hpp"

#include <algorithm>

namespace lcomp {

namespace {

Judgment from_region_cover(const RegionCover& rc, const FormalBall& a, const FormalBall& b) {
    if (rc.verdict == Verdict::Proved) return Judgment::proved("region inclusion", {{"certificate", rc.certificate}});
    if (rc.verdict == Verdict::Refuted)
        return Judgment::refuted("point of a outside b", {{"point", point_to_json(*rc.witness)}, {"lhs", a}, {"rhs", b}});
    return Judgment::unknown("subdivision budget exhausted", rc.cells);
}

std::size_t depth_for(std::size_t budget) { return std::min<std::size_t>(12 + 2 * budget, 48); }

// Fallbacks valid in any space.
class NullOracle : public SpatialOracle {
public:
    bool exact() const override { return false; }
    bool locally_compact() const override { return false; }
    Judgment ball_subset(const Gus& g, const FormalBall& a, const FormalBall& b, std::size_t budget) const override {
        const Judgment o = ball_order(g, a, b, false, budget);
        if (o.is_proved()) return Judgment::proved("a ≤_X b", o.evidence);
        return Judgment::unknown("no spatial oracle", budget);
    }
    Judgment ball_meets(const Gus& g, const std::vector<FormalBall>& balls, std::size_t budget) const override {
        for (const FormalBall& c : balls) {
            bool all = true;
            for (const FormalBall& b : balls) all = all && (ball_has(g, b, c.center, budget) == Verdict::Proved);
            if (all) return Judgment::proved("common center", {{"point", point_to_json(c.center)}});
        }
        return Judgment::unknown("no spatial oracle", budget);
    }
    std::vector<Point> eps_net(const Gus& g, const MetricId&, const Rational&) const override {
        throw NotTotallyBounded("space '" + g.name + "' has no finite nets");
    }
    CoverDecision cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                        std::size_t budget) const override {
        CoverDecision d;
        for (std::size_t j = 0; j < us.size(); ++j)
            if ((ball_leq(g, a, us[j], false, budget) == Verdict::Proved)) {
                d.verdict = Verdict::Proved;
                d.certificate = json{{"leq", j}};
                return d;
            }
        return d;
    }
    bool verify_cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                      const json& c) const override {
        if (!c.is_object() || !c.contains("leq") || !c["leq"].is_number_unsigned()) return false;
        const std::size_t j = c["leq"].get<std::size_t>();
        return j < us.size() && (ball_leq(g, a, us[j], false, 64) == Verdict::Proved);
    }
    std::optional<Cell> enclosing_cell(const Gus&, const FormalBall&) const override { return std::nullopt; }
    std::optional<Region> region(const Gus&, const FormalBall&) const override { return std::nullopt; }
};

// Box carriers with sup and euclidean generators.
class GeometricOracle : public NullOracle {
public:
    bool exact() const override { return true; }
    bool locally_compact() const override { return true; }

    std::optional<Region> region(const Gus& g, const FormalBall& a) const override {
        if (!g.box || a.center.size() != g.dim) return std::nullopt;
        Region r;
        r.box = *g.box;
        bool euclid = false;
        for (const auto& id : a.metric.gens) {
            const auto shape = g.generator(id).shape;
            if (shape == GeneratorMetric::Shape::None) return std::nullopt;
            euclid = euclid || shape == GeneratorMetric::Shape::Euclid;
        }
        if (euclid) {
            r.disks.push_back(Disk{a.center, a.radius * a.radius});
        } else {
            for (std::size_t i = 0; i < g.dim; ++i)
                r.box[i] = r.box[i].meet(AxisRange::open(a.center[i] - a.radius, a.center[i] + a.radius));
        }
        return r;
    }

    Judgment ball_subset(const Gus& g, const FormalBall& a, const FormalBall& b, std::size_t budget) const override {
        const auto ra = region(g, a), rb = region(g, b);
        if (!ra || !rb) return NullOracle::ball_subset(g, a, b, budget);
        const bool unbounded = std::all_of(g.box->begin(), g.box->end(), [](const AxisRange& x) { return !x.lo && !x.hi; });
        if (unbounded && g.dim >= 2) {
            const bool da = !ra->disks.empty(), db = !rb->disks.empty();
            bool ok = false;
            json ev{{"lhs", a}, {"rhs", b}, {"criterion", "norm"}};
            if (da && db) {
                const Rational gap = b.radius - a.radius;
                ok = gap.sign() >= 0 && squared_distance(a.center, b.center) <= gap * gap;
            } else if (!da && db) {
                ok = true;
                for (const Point& c : box_corners(a)) ok = ok && squared_distance(c, b.center) <= b.radius * b.radius;
            } else if (da && !db) {
                ok = true;
                for (std::size_t i = 0; i < g.dim; ++i)
                    ok = ok && (a.center[i] - b.center[i]).abs() + a.radius <= b.radius;
            } else {
                ok = true;
                for (std::size_t i = 0; i < g.dim; ++i)
                    ok = ok && (a.center[i] - b.center[i]).abs() + a.radius <= b.radius;
            }
            if (ok) return Judgment::proved("a_* ⊆ b_*", ev);
            // The cover search supplies a point of a_* outside b_*.
            const RegionCover rc = region_cover(*ra, {*rb}, depth_for(budget));
            if (rc.verdict == Verdict::Refuted) return from_region_cover(rc, a, b);
            return Judgment::refuted("a_* ⊄ b_*", ev);
        }
        return from_region_cover(region_cover(*ra, {*rb}, depth_for(budget)), a, b);
    }

    Judgment ball_meets(const Gus& g, const std::vector<FormalBall>& balls, std::size_t budget) const override {
        std::vector<Region> rs;
        for (const FormalBall& b : balls) {
            const auto r = region(g, b);
            if (!r) return NullOracle::ball_meets(g, balls, budget);
            rs.push_back(*r);
        }
        const RegionMeet m = regions_meet(rs, depth_for(budget));
        if (m.verdict == Verdict::Proved) return Judgment::proved("common point", {{"point", point_to_json(*m.point)}});
        if (m.verdict == Verdict::Refuted) return Judgment::refuted("empty intersection");
        return Judgment::unknown("subdivision budget exhausted", budget);
    }

    std::vector<Point> eps_net(const Gus& g, const MetricId& m, const Rational& eps) const override {
        std::vector<Rational> lo, len;
        for (const AxisRange& x : *g.box) {
            if (!x.lo || !x.hi) throw NotTotallyBounded("carrier of '" + g.name + "' is unbounded");
            lo.push_back(*x.lo);
            len.push_back(*x.hi - *x.lo);
        }
        bool euclid = false;
        for (const auto& id : m.gens) euclid = euclid || g.generator(id).shape == GeneratorMetric::Shape::Euclid;
        std::vector<Point> out{Point{}};
        for (std::size_t i = 0; i < g.dim; ++i) {
            long steps = 0;
            if (len[i].sign() > 0) {
                if (euclid) {
                    const Rational need = len[i] * len[i] * Rational(static_cast<long>(g.dim));
                    steps = 1;
                    while (Rational(steps * steps) * eps * eps < need) ++steps;
                } else {
                    steps = std::max<long>(1, (len[i] / eps).ceil().get_si());
                }
            }
            std::vector<Point> next;
            for (const Point& p : out)
                for (long k = 0; k <= steps; ++k) {
                    Point q = p;
                    q.push_back(steps == 0 ? lo[i] : lo[i] + len[i] * Rational(k, steps));
                    next.push_back(std::move(q));
                }
            out = std::move(next);
        }
        return out;
    }

    CoverDecision cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                        std::size_t budget) const override {
        const auto ra = region(g, a);
        std::vector<Region> ms;
        for (const FormalBall& u : us) {
            const auto r = region(g, u);
            if (!r || !ra) return NullOracle::cover(g, a, us, budget);
            ms.push_back(*r);
        }
        const RegionCover rc = region_cover(*ra, ms, depth_for(budget));
        return CoverDecision{rc.verdict, rc.certificate, rc.witness, rc.cells};
    }

    bool verify_cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                      const json& c) const override {
        if (c.is_object() && c.contains("leq")) return NullOracle::verify_cover(g, a, us, c);
        const auto ra = region(g, a);
        if (!ra) return false;
        std::vector<Region> ms;
        for (const FormalBall& u : us) {
            const auto r = region(g, u);
            if (!r) return false;
            ms.push_back(*r);
        }
        return verify_region_cover(*ra, ms, c);
    }

    std::optional<Cell> enclosing_cell(const Gus& g, const FormalBall& a) const override {
        const auto r = region(g, a);
        if (!r) return std::nullopt;
        return bounding_cell(*r);
    }

private:
    static std::vector<Point> box_corners(const FormalBall& a) {
        std::vector<Point> out{Point{}};
        for (const Rational& c : a.center) {
            std::vector<Point> next;
            for (const Point& p : out)
                for (const Rational& v : {c - a.radius, c + a.radius}) {
                    Point q = p;
                    q.push_back(v);
                    next.push_back(std::move(q));
                }
            out = std::move(next);
        }
        return out;
    }
};

// Finite carriers: extents are point sets.
class FiniteOracle : public SpatialOracle {
public:
    bool exact() const override { return true; }
    bool locally_compact() const override { return true; }

    Judgment ball_subset(const Gus& g, const FormalBall& a, const FormalBall& b, std::size_t) const override {
        const auto eb = extent(g, b);
        for (const Point& p : extent(g, a))
            if (std::find(eb.begin(), eb.end(), p) == eb.end())
                return Judgment::refuted("point of a outside b", {{"point", point_to_json(p)}});
        return Judgment::proved("extent inclusion");
    }
    Judgment ball_meets(const Gus& g, const std::vector<FormalBall>& balls, std::size_t) const override {
        for (const Point& p : g.enumerate(0)) {
            bool all = true;
            for (const FormalBall& b : balls) all = all && inside(g, b, p);
            if (all) return Judgment::proved("common point", {{"point", point_to_json(p)}});
        }
        return Judgment::refuted("empty intersection");
    }
    std::vector<Point> eps_net(const Gus& g, const MetricId&, const Rational&) const override { return g.enumerate(0); }
    CoverDecision cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                        std::size_t) const override {
        CoverDecision d;
        json assign = json::array();
        for (const Point& p : extent(g, a)) {
            ++d.work;
            std::optional<std::size_t> hit;
            for (std::size_t j = 0; j < us.size() && !hit; ++j)
                if (inside(g, us[j], p)) hit = j;
            if (!hit) {
                d.verdict = Verdict::Refuted;
                d.witness = p;
                return d;
            }
            assign.push_back(json{{"point", point_to_json(p)}, {"in", *hit}});
        }
        d.verdict = Verdict::Proved;
        d.certificate = json{{"points", assign}};
        return d;
    }
    bool verify_cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                      const json& c) const override {
        if (!c.is_object() || !c.contains("points")) return false;
        const auto ext = extent(g, a);
        std::vector<Point> seen;
        for (const auto& e : c["points"]) {
            const Point p = parse_point(e["point"]);
            const std::size_t j = e["in"].get<std::size_t>();
            if (j >= us.size() || !inside(g, us[j], p)) return false;
            seen.push_back(p);
        }
        return std::all_of(ext.begin(), ext.end(),
                           [&](const Point& p) { return std::find(seen.begin(), seen.end(), p) != seen.end(); });
    }
    std::optional<Cell> enclosing_cell(const Gus&, const FormalBall&) const override { return std::nullopt; }
    std::optional<Region> region(const Gus&, const FormalBall&) const override { return std::nullopt; }

private:
    static bool inside(const Gus& g, const FormalBall& b, const Point& p) {
        return metric_compare(g, b.metric, b.center, p, b.radius, true, 64) == Verdict::Proved;
    }
    static std::vector<Point> extent(const Gus& g, const FormalBall& b) {
        std::vector<Point> out;
        for (const Point& p : g.enumerate(0))
            if (inside(g, b, p)) out.push_back(p);
        return out;
    }
};

std::vector<Rational> dyadics(const Rational& lo, const Rational& hi, std::size_t k, std::size_t cap) {
    std::vector<Rational> out;
    const std::size_t j = std::min<std::size_t>(k, 12);
    const Rational step = Rational::pow2(-static_cast<long>(j));
    Rational start = Rational((lo / step).ceil().get_si()) * step;
    for (Rational x = start; x <= hi && out.size() < cap; x += step) out.push_back(x);
    return out;
}

std::vector<Point> grid(const std::vector<AxisRange>& box, std::size_t k) {
    const std::size_t n = box.size();
    const std::size_t cap = n <= 1 ? 257 : n == 2 ? 33 : 9;
    std::vector<Point> out{Point{}};
    for (const AxisRange& a : box) {
        const Rational lo = a.lo ? *a.lo : Rational(-2);
        const Rational hi = a.hi ? *a.hi : Rational(2);
        std::size_t j = k;
        while (j > 0 && (hi - lo) * Rational::pow2(static_cast<long>(j)) > Rational(static_cast<long>(cap - 1))) --j;
        std::vector<Point> next;
        for (const Point& p : out)
            for (const Rational& x : dyadics(lo, hi, j, cap)) {
                if (!a.contains(x)) continue;
                Point q = p;
                q.push_back(x);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

GeneratorMetric abs_metric(std::string id) {
    GeneratorMetric m;
    m.id = std::move(id);
    m.shape = GeneratorMetric::Shape::Sup;
    m.value = [](const Point& x, const Point& y) { return std::optional<Rational>((x[0] - y[0]).abs()); };
    return m;
}

void box_carrier(Gus& g, std::vector<AxisRange> box) {
    g.box = box;
    g.in_carrier = [box](const Point& p) {
        if (p.size() != box.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!box[i].contains(p[i])) return false;
        return true;
    };
    g.enumerate = [box](std::size_t k) { return grid(box, k); };
}

std::size_t index_of(const Point& p, std::size_t n) {
    if (p.size() != 1 || !p[0].is_integer() || p[0].sign() < 0 || p[0] >= Rational(static_cast<long>(n)))
        throw std::invalid_argument("not a point of the finite carrier: " + point_str(p));
    return p[0].numerator().get_ui();
}

void finite_carrier(Gus& g, std::size_t n) {
    g.finite_carrier = true;
    g.in_carrier = [n](const Point& p) {
        return p.size() == 1 && p[0].is_integer() && p[0].sign() >= 0 && p[0] < Rational(static_cast<long>(n));
    };
    g.enumerate = [n](std::size_t) {
        std::vector<Point> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(Point{Rational(static_cast<long>(i))});
        return out;
    };
}

}  // namespace

void attach_default_oracle(Gus& g) {
    if (g.finite_carrier) {
        g.oracle = std::make_shared<FiniteOracle>();
        return;
    }
    const bool shaped = std::all_of(g.generators.begin(), g.generators.end(),
                                    [](const GeneratorMetric& m) { return m.shape != GeneratorMetric::Shape::None; });
    if (g.box && shaped && g.dim > 0) g.oracle = std::make_shared<GeometricOracle>();
    else g.oracle = std::make_shared<NullOracle>();
}

Gus rational_line() {
    Gus g;
    g.name = "Q";
    g.generators.push_back(abs_metric("abs"));
    box_carrier(g, {AxisRange::all()});
    attach_default_oracle(g);
    return g;
}

Gus unit_interval() {
    Gus g;
    g.name = "[0,1]";
    g.generators.push_back(abs_metric("abs"));
    box_carrier(g, {AxisRange::closed(Rational(0), Rational(1))});
    attach_default_oracle(g);
    return g;
}

Gus rational_box(std::size_t n, std::vector<std::string> metrics, std::optional<std::pair<Rational, Rational>> bounds) {
    if (n == 0) throw std::invalid_argument("dimension must be positive");
    if (metrics.empty()) throw std::invalid_argument("at least one metric is needed");
    Gus g;
    g.dim = n;
    g.name = "Q^" + std::to_string(n);
    if (bounds) g.name = "[" + bounds->first.str() + "," + bounds->second.str() + "]^" + std::to_string(n);
    std::sort(metrics.begin(), metrics.end());
    metrics.erase(std::unique(metrics.begin(), metrics.end()), metrics.end());
    for (const std::string& id : metrics) {
        GeneratorMetric m;
        m.id = id;
        if (id == "sup" || (id == "euclid" && n == 1)) {
            m.shape = GeneratorMetric::Shape::Sup;
            m.value = [](const Point& x, const Point& y) {
                Rational best(0);
                for (std::size_t i = 0; i < x.size(); ++i) best = max(best, (x[i] - y[i]).abs());
                return std::optional<Rational>(best);
            };
        } else if (id == "euclid") {
            m.shape = GeneratorMetric::Shape::Euclid;
            m.form = GeneratorMetric::Form::Squared;
            m.value = [](const Point& x, const Point& y) { return std::optional<Rational>(squared_distance(x, y)); };
        } else {
            throw std::invalid_argument("unknown box metric '" + id + "'");
        }
        g.generators.push_back(std::move(m));
    }
    std::vector<AxisRange> box(n, bounds ? AxisRange::closed(bounds->first, bounds->second) : AxisRange::all());
    box_carrier(g, std::move(box));
    attach_default_oracle(g);
    return g;
}

Gus finite_discrete(const std::vector<std::vector<Rational>>& table, std::string name) {
    const std::size_t n = table.size();
    if (n == 0) throw InvalidMetricTable("metric table is empty");
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) throw InvalidMetricTable("metric table is not square at row " + std::to_string(i));
        if (!table[i][i].is_zero()) throw InvalidMetricTable("d(x,x) must be 0 at " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            if (table[i][j].sign() < 0)
                throw InvalidMetricTable("negative distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    bool symmetric = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            symmetric = symmetric && table[i][j] == table[j][i];
            for (std::size_t k = 0; k < n; ++k)
                if (table[i][k] > table[i][j] + table[j][k])
                    throw InvalidMetricTable("triangle inequality fails at (" + std::to_string(i) + "," +
                                             std::to_string(j) + "," + std::to_string(k) + ")");
        }
    Gus g;
    g.name = std::move(name);
    GeneratorMetric m;
    m.id = "table";
    m.symmetric = symmetric;
    m.value = [table, n](const Point& x, const Point& y) {
        return std::optional<Rational>(table[index_of(x, n)][index_of(y, n)]);
    };
    g.generators.push_back(std::move(m));
    finite_carrier(g, n);
    attach_default_oracle(g);
    return g;
}

Gus poset_space(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& order) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (const auto& [a, b] : order) {
        if (a >= n || b >= n) throw std::invalid_argument("order pair out of range");
        le[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (le[i][k] && le[k][j]) le[i][j] = true;
    std::vector<std::vector<Rational>> table(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) table[i][j] = le[i][j] ? Rational(0) : Rational(1);
    Gus g = finite_discrete(table, "poset");
    g.generators[0].id = "poset";
    return g;
}

Gus function_seminorm(std::function<Rational(const Rational&)> f, std::string name) {
    Gus g;
    g.name = "Q_" + name;
    GeneratorMetric m;
    m.id = "d_" + name;
    m.value = [f](const Point& x, const Point& y) { return std::optional<Rational>((f(x[0]) - f(y[0])).abs()); };
    g.generators.push_back(std::move(m));
    box_carrier(g, {AxisRange::all()});
    g.box.reset();
    attach_default_oracle(g);
    return g;
}

}  // namespace lcomp
