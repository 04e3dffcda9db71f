// SPDX-License-Identifier: Apache-2.0
#include "lcomp/gus.hpp"

#include <algorithm>
#include <map>

namespace lcomp {

DistanceInterval eval(const GeneratorMetric& g, const Point& x, const Point& y, unsigned n) {
    switch (g.form) {
        case GeneratorMetric::Form::Exact: {
            const auto v = g.value(x, y);
            if (!v) return {Bound::pos_inf(), Bound::pos_inf(), false};
            return {Bound(*v), Bound(*v), false};
        }
        case GeneratorMetric::Form::Squared: {
            const auto v = g.value(x, y);
            if (!v) return {Bound::pos_inf(), Bound::pos_inf(), false};
            const SqrtEnclosure e = sqrt_enclosure(*v, n);
            return {Bound(e.lo), Bound(e.hi), false};
        }
        case GeneratorMetric::Form::Approx: {
            DistanceInterval d = g.approx(x, y, n);
            d.upper_only = d.upper_only || !g.dedekind;
            if (d.upper_only) d.lo = Bound(0);
            return d;
        }
    }
    return {Bound(0), Bound::pos_inf(), true};
}

Verdict generator_compare(const GeneratorMetric& g, const Point& x, const Point& y, const Rational& c, bool strict,
                          unsigned budget) {
    if (g.form != GeneratorMetric::Form::Approx) {
        const auto v = g.value(x, y);
        if (!v) return Verdict::Refuted;
        if (g.form == GeneratorMetric::Form::Exact) return (strict ? *v < c : *v <= c) ? Verdict::Proved : Verdict::Refuted;
        // sqrt(v) against c, by squaring.
        if (c.sign() < 0) return Verdict::Refuted;
        if (c.is_zero()) return (!strict && v->is_zero()) ? Verdict::Proved : Verdict::Refuted;
        return (strict ? *v < c * c : *v <= c * c) ? Verdict::Proved : Verdict::Refuted;
    }
    for (unsigned n = 0; n <= budget; ++n) {
        const DistanceInterval d = eval(g, x, y, n);
        if (strict ? d.hi < Bound(c) : d.hi <= Bound(c)) return Verdict::Proved;
        if (!d.upper_only && (strict ? d.lo >= Bound(c) : d.lo > Bound(c))) return Verdict::Refuted;
    }
    return Verdict::Unknown;
}

MetricId::MetricId(std::vector<std::string> g) : gens(std::move(g)) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
}

bool MetricId::contains(const std::string& g) const { return std::binary_search(gens.begin(), gens.end(), g); }

MetricId MetricId::join(const MetricId& o) const {
    std::vector<std::string> all = gens;
    all.insert(all.end(), o.gens.begin(), o.gens.end());
    return MetricId(std::move(all));
}

bool metric_leq(const MetricId& rho, const MetricId& d) {
    return std::includes(d.gens.begin(), d.gens.end(), rho.gens.begin(), rho.gens.end());
}

void to_json(json& j, const MetricId& m) { j = m.gens; }
void from_json(const json& j, MetricId& m) {
    if (j.is_string()) m = MetricId({j.get<std::string>()});
    else m = MetricId(j.get<std::vector<std::string>>());
}

std::string FormalBall::str() const {
    std::string m;
    for (std::size_t i = 0; i < metric.gens.size(); ++i) m += (i ? "," : "") + metric.gens[i];
    return "b_{" + m + "}(" + point_str(center) + "," + radius.str() + ")";
}

void to_json(json& j, const FormalBall& b) {
    j = json::object();
    j["metric"] = b.metric;
    j["center"] = point_to_json(b.center);
    j["radius"] = b.radius.str();
}

Point parse_point(const json& j) {
    Point p;
    if (j.is_array()) {
        for (const auto& x : j) p.push_back(x.get<Rational>());
    } else {
        p.push_back(j.get<Rational>());
    }
    return p;
}

void from_json(const json& j, FormalBall& b) {
    if (!j.is_object() || !j.contains("metric") || !j.contains("center") || !j.contains("radius"))
        throw ParseError("ball: expected {metric, center, radius}");
    b.metric = j["metric"].get<MetricId>();
    b.center = parse_point(j["center"]);
    b.radius = j["radius"].get<Rational>();
}

FormalBall make_ball(MetricId m, Point center, Rational radius) {
    if (radius.sign() <= 0) throw std::invalid_argument("radius must be positive");
    return FormalBall{std::move(m), std::move(center), std::move(radius)};
}

const GeneratorMetric& Gus::generator(const std::string& id) const {
    for (const auto& g : generators)
        if (g.id == id) return g;
    throw std::invalid_argument("unknown metric generator '" + id + "' in space '" + name + "'");
}

bool Gus::has_generator(const std::string& id) const {
    return std::any_of(generators.begin(), generators.end(), [&](const GeneratorMetric& g) { return g.id == id; });
}

MetricId Gus::full_metric() const {
    std::vector<std::string> ids;
    for (const auto& g : generators) ids.push_back(g.id);
    return MetricId(std::move(ids));
}

std::vector<MetricId> Gus::metric_ids() const {
    std::vector<MetricId> out;
    const std::size_t n = std::min<std::size_t>(generators.size(), 10);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::string> ids;
        for (std::size_t k = 0; k < n; ++k)
            if (mask >> k & 1u) ids.push_back(generators[k].id);
        out.emplace_back(std::move(ids));
    }
    std::stable_sort(out.begin(), out.end(), [](const MetricId& a, const MetricId& b) { return a.gens.size() < b.gens.size(); });
    return out;
}

bool Gus::symmetric() const {
    return std::all_of(generators.begin(), generators.end(), [](const GeneratorMetric& g) { return g.symmetric; });
}

const SpatialOracle& Gus::require_oracle() const {
    if (!oracle) throw OracleMissing("space '" + name + "' has no spatial oracle");
    return *oracle;
}

DistanceInterval metric_eval(const Gus& g, const MetricId& m, const Point& x, const Point& y, unsigned n) {
    DistanceInterval out{Bound(0), Bound(0), false};
    for (const auto& id : m.gens) {
        const DistanceInterval d = eval(g.generator(id), x, y, n);
        out.lo = max(out.lo, d.lo);
        out.hi = max(out.hi, d.hi);
        out.upper_only = out.upper_only || d.upper_only;
    }
    if (out.upper_only) out.lo = Bound(0);
    return out;
}

Verdict metric_compare(const Gus& g, const MetricId& m, const Point& x, const Point& y, const Rational& c, bool strict,
                       unsigned budget) {
    Verdict v = Verdict::Proved;
    for (const auto& id : m.gens) {
        const Verdict w = generator_compare(g.generator(id), x, y, c, strict, budget);
        if (w == Verdict::Refuted) return w;
        if (w == Verdict::Unknown) v = w;
    }
    return v;
}

Verdict ball_leq(const Gus& g, const FormalBall& a, const FormalBall& b, bool strict, std::size_t budget) {
    if (!metric_leq(b.metric, a.metric)) return Verdict::Unknown;
    return metric_compare(g, b.metric, b.center, a.center, b.radius - a.radius, strict, static_cast<unsigned>(budget));
}

Judgment ball_order(const Gus& g, const FormalBall& a, const FormalBall& b, bool strict, std::size_t budget) {
    if (!metric_leq(b.metric, a.metric))
        return Judgment::unknown("metric order not certified by generator inclusion", budget);
    const Verdict v = ball_leq(g, a, b, strict, budget);
    json ev{{"lhs", a}, {"rhs", b}, {"strict", strict}};
    if (v == Verdict::Proved) return Judgment::proved(strict ? "d(x,y) + δ < ε" : "d(x,y) + δ ≤ ε", ev);
    if (v == Verdict::Refuted) return Judgment::refuted(strict ? "d(x,y) + δ ≥ ε" : "d(x,y) + δ > ε", ev);
    return Judgment::unknown("distance not separated from radius gap", budget);
}

Verdict ball_has(const Gus& g, const FormalBall& a, const Point& x, std::size_t budget) {
    return metric_compare(g, a.metric, a.center, x, a.radius, true, static_cast<unsigned>(budget));
}

Judgment ball_contains(const Gus& g, const FormalBall& a, const Point& x, std::size_t budget) {
    const Verdict v = ball_has(g, a, x, budget);
    json ev{{"ball", a}, {"point", point_to_json(x)}};
    if (v == Verdict::Proved) return Judgment::proved("d(center, x) < radius", ev);
    if (v == Verdict::Refuted) return Judgment::refuted("d(center, x) ≥ radius", ev);
    return Judgment::unknown("distance not separated from radius", budget);
}

std::optional<FormalBall> interpolate(const Gus& g, const FormalBall& a, const FormalBall& b, std::size_t budget) {
    if (ball_leq(g, a, b, true, budget) != Verdict::Proved) return std::nullopt;
    const Rational room = b.radius - a.radius;
    for (unsigned n = 0; n <= std::max<unsigned>(40, static_cast<unsigned>(budget)); ++n) {
        const DistanceInterval d = metric_eval(g, b.metric, b.center, a.center, n);
        if (d.hi.finite() && d.hi.value() < room) {
            const Rational gap = room - d.hi.value();
            return FormalBall{a.metric, a.center, a.radius + gap / Rational(2)};
        }
    }
    return std::nullopt;
}

std::vector<Point> eps_net(const Gus& g, const MetricId& m, const Rational& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
    return g.require_oracle().eps_net(g, m, eps);
}

namespace {

// Exact square of d_m(x,y); nullopt outer when some generator is approximate.
std::optional<std::optional<Rational>> exact_square(const Gus& g, const MetricId& m, const Point& x, const Point& y) {
    std::optional<Rational> best = Rational(0);
    for (const auto& id : m.gens) {
        const GeneratorMetric& gen = g.generator(id);
        if (gen.form == GeneratorMetric::Form::Approx) return std::nullopt;
        const auto v = gen.value(x, y);
        if (!v) return std::optional<Rational>{};
        const Rational s = gen.form == GeneratorMetric::Form::Exact ? (*v) * (*v) : *v;
        if (best && s > *best) best = s;
    }
    return best;
}

// ρ(fx, fx') ≤ d(x, x') on one pair.
Verdict pair_le(const Gus& y, const std::string& rho, const Point& fx, const Point& fx2, const Gus& x,
                const MetricId& d, const Point& p, const Point& q) {
    const auto lhs = exact_square(y, MetricId({rho}), fx, fx2);
    const auto rhs = exact_square(x, d, p, q);
    if (lhs && rhs) {
        if (!*rhs) return Verdict::Proved;
        if (!*lhs) return Verdict::Refuted;
        return **lhs <= **rhs ? Verdict::Proved : Verdict::Refuted;
    }
    for (unsigned n = 0; n <= 40; ++n) {
        const DistanceInterval l = metric_eval(y, MetricId({rho}), fx, fx2, n);
        const DistanceInterval r = metric_eval(x, d, p, q, n);
        if (l.hi <= r.lo) return Verdict::Proved;
        if (!l.upper_only && l.lo > r.hi) return Verdict::Refuted;
    }
    return Verdict::Unknown;
}

}  // namespace

Judgment check_homomorphism(const std::function<Point(const Point&)>& f, const Gus& x, const Gus& y,
                            std::size_t samples) {
    const std::vector<Point> pts = x.enumerate(samples);
    json witness = json::object();
    bool undecided = false;
    for (const GeneratorMetric& rho : y.generators) {
        bool found = false;
        for (const MetricId& d : x.metric_ids()) {
            bool ok = true;
            for (std::size_t i = 0; i < pts.size() && ok; ++i)
                for (std::size_t j = 0; j < pts.size() && ok; ++j)
                    ok = pair_le(y, rho.id, f(pts[i]), f(pts[j]), x, d, pts[i], pts[j]) == Verdict::Proved;
            if (ok) {
                witness[rho.id] = d;
                found = true;
                break;
            }
        }
        if (found) continue;
        // The full metric dominates every source metric; a violation there refutes all.
        const MetricId full = x.full_metric();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (pair_le(y, rho.id, f(pts[i]), f(pts[j]), x, full, pts[i], pts[j]) == Verdict::Refuted)
                    return Judgment::refuted("target metric exceeds every source metric",
                                             {{"generator", rho.id},
                                              {"pair", {point_to_json(pts[i]), point_to_json(pts[j])}}});
        undecided = true;
    }
    if (undecided) return Judgment::unknown("some comparisons undecided", samples);
    return Judgment::proved("sampled pairs", {{"witness", witness}, {"samples", pts.size()}});
}

Gus gus_product(const Gus& x, const Gus& y) {
    Gus g;
    g.name = x.name + "×" + y.name;
    g.dim = x.dim + y.dim;
    const std::size_t dx = x.dim;
    auto split = [dx](const Point& p) {
        return std::pair<Point, Point>(Point(p.begin(), p.begin() + static_cast<long>(dx)),
                                       Point(p.begin() + static_cast<long>(dx), p.end()));
    };
    for (const auto& gx : x.generators)
        for (const auto& gy : y.generators) {
            GeneratorMetric m;
            m.id = "(" + gx.id + "," + gy.id + ")";
            m.symmetric = gx.symmetric && gy.symmetric;
            m.finite = gx.finite && gy.finite;
            m.dedekind = gx.dedekind && gy.dedekind;
            using F = GeneratorMetric::Form;
            m.shape = (gx.shape == GeneratorMetric::Shape::Sup && gy.shape == GeneratorMetric::Shape::Sup)
                          ? GeneratorMetric::Shape::Sup
                          : GeneratorMetric::Shape::None;
            if (gx.form != F::Approx && gy.form != F::Approx) {
                const bool squared = gx.form == F::Squared || gy.form == F::Squared;
                m.form = squared ? F::Squared : F::Exact;
                m.value = [gx, gy, split, squared](const Point& p, const Point& q) -> std::optional<Rational> {
                    const auto [p1, p2] = split(p);
                    const auto [q1, q2] = split(q);
                    auto a = gx.value(p1, q1);
                    auto b = gy.value(p2, q2);
                    if (!a || !b) return std::nullopt;
                    if (squared) {
                        if (gx.form == F::Exact) a = (*a) * (*a);
                        if (gy.form == F::Exact) b = (*b) * (*b);
                    }
                    return max(*a, *b);
                };
            } else {
                m.form = F::Approx;
                m.approx = [gx, gy, split](const Point& p, const Point& q, unsigned n) {
                    const auto [p1, p2] = split(p);
                    const auto [q1, q2] = split(q);
                    const DistanceInterval a = eval(gx, p1, q1, n), b = eval(gy, p2, q2, n);
                    return DistanceInterval{max(a.lo, b.lo), max(a.hi, b.hi), a.upper_only || b.upper_only};
                };
            }
            g.generators.push_back(std::move(m));
        }
    g.in_carrier = [x, y, split](const Point& p) {
        const auto [a, b] = split(p);
        return x.in_carrier(a) && y.in_carrier(b);
    };
    g.enumerate = [x, y](std::size_t k) {
        std::vector<Point> out;
        for (const Point& a : x.enumerate(k))
            for (const Point& b : y.enumerate(k)) {
                Point p = a;
                p.insert(p.end(), b.begin(), b.end());
                out.push_back(std::move(p));
            }
        return out;
    };
    if (x.box && y.box) {
        std::vector<AxisRange> box = *x.box;
        box.insert(box.end(), y.box->begin(), y.box->end());
        g.box = std::move(box);
    }
    g.finite_carrier = x.finite_carrier && y.finite_carrier;
    attach_default_oracle(g);
    return g;
}

Gus gus_countable_truncation(const std::vector<Gus>& spaces, const std::vector<Point>& basepoint, std::size_t n) {
    if (basepoint.size() < spaces.size()) throw std::invalid_argument("basepoint must cover every coordinate");
    if (n > spaces.size()) n = spaces.size();
    Gus g;
    g.name = "Π_" + std::to_string(n);
    std::vector<std::size_t> offset{0};
    for (std::size_t i = 0; i < n; ++i) offset.push_back(offset.back() + spaces[i].dim);
    g.dim = offset.back();
    auto block = [offset](const Point& p, std::size_t i) {
        return Point(p.begin() + static_cast<long>(offset[i]), p.begin() + static_cast<long>(offset[i + 1]));
    };
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& gi : spaces[i].generators) {
            GeneratorMetric m = gi;
            m.id = std::to_string(i) + ":" + gi.id;
            m.shape = GeneratorMetric::Shape::None;
            if (gi.value) m.value = [gi, block, i](const Point& p, const Point& q) { return gi.value(block(p, i), block(q, i)); };
            if (gi.approx)
                m.approx = [gi, block, i](const Point& p, const Point& q, unsigned k) {
                    return gi.approx(block(p, i), block(q, i), k);
                };
            g.generators.push_back(std::move(m));
        }
    if (n == 0) {
        GeneratorMetric m;
        m.id = "trivial";
        m.value = [](const Point&, const Point&) { return std::optional<Rational>(Rational(0)); };
        g.generators.push_back(std::move(m));
        g.in_carrier = [](const Point& p) { return p.empty(); };
        g.enumerate = [](std::size_t) { return std::vector<Point>{Point{}}; };
        g.finite_carrier = true;
        attach_default_oracle(g);
        return g;
    }
    g.in_carrier = [spaces, block, n](const Point& p) {
        for (std::size_t i = 0; i < n; ++i)
            if (!spaces[i].in_carrier(block(p, i))) return false;
        return true;
    };
    g.enumerate = [spaces, n](std::size_t k) {
        std::vector<Point> out{Point{}};
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Point> next;
            for (const Point& p : out)
                for (const Point& q : spaces[i].enumerate(k)) {
                    Point r = p;
                    r.insert(r.end(), q.begin(), q.end());
                    next.push_back(std::move(r));
                    if (next.size() > 4096) break;
                }
            out = std::move(next);
        }
        return out;
    };
    g.finite_carrier = std::all_of(spaces.begin(), spaces.begin() + static_cast<long>(n),
                                   [](const Gus& s) { return s.finite_carrier; });
    attach_default_oracle(g);
    return g;
}

}  // namespace lcomp
