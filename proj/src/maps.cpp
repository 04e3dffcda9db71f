// SPDX-License-Identifier: Apache-2.0
#include "lcomp/maps.hpp"

#include <algorithm>

namespace lcomp {

namespace {

std::vector<Ball> fiber_sample(const Gus& x, const BallMap& r, const Ball& b, std::size_t k) {
    std::vector<Ball> out;
    for (const Ball& a : sample_balls(x, k))
        if (r.holds(a, b, k)) out.push_back(a);
    return out;
}

std::vector<Ball> near_of(const Gus& x, const Ball& anchor, std::size_t k) {
    std::vector<Ball> out{anchor};
    for (Ball& b : wb_enumerate(x, anchor, std::min<std::size_t>(k, 2))) out.push_back(std::move(b));
    return out;
}

// Exact comparison m < δ for the distance from y to the farthest point of a closed cell.
std::optional<Rational> far_bound(const GeneratorMetric& g, const Cell& c, const Point& y, const Rational& delta) {
    if (g.shape == GeneratorMetric::Shape::Sup) {
        Rational m(0);
        for (std::size_t i = 0; i < y.size(); ++i)
            m = max(m, max((c.lo[i] - y[i]).abs(), (c.hi[i] - y[i]).abs()));
        if (m < delta) return m;
        return std::nullopt;
    }
    if (g.shape == GeneratorMetric::Shape::Euclid) {
        Rational m2(0);
        for (std::size_t i = 0; i < y.size(); ++i) {
            const Rational a = c.lo[i] - y[i], b = c.hi[i] - y[i];
            m2 += max(a * a, b * b);
        }
        if (!(m2 < delta * delta)) return std::nullopt;
        for (unsigned n = 4;; n += 8) {
            const Rational hi = sqrt_enclosure(m2, n).hi;
            if (hi < delta) return hi;
        }
    }
    return std::nullopt;
}

}  // namespace

Judgment continuous_relates(const FunctionData& fd, const Gus& y, const Ball& a, const Ball& b) {
    const auto cell = fd.image_box(a);
    if (!cell) return Judgment::unknown("no continuity data for this ball");
    Rational m(0);
    for (const auto& id : b.metric.gens) {
        const GeneratorMetric& g = y.generator(id);
        if (g.shape == GeneratorMetric::Shape::None) return Judgment::unknown("target generator has no box geometry");
        const auto bound = far_bound(g, *cell, b.center, b.radius);
        if (!bound) return Judgment::unknown("image box reaches the boundary of b");
        m = max(m, *bound);
    }
    const Ball via{b.metric, b.center, mid(m, b.radius)};
    return Judgment::proved("f[a_*] ⊆ b'_* with b' <_Y b", {{"via", via}, {"image_box", {point_to_json(cell->lo), point_to_json(cell->hi)}}});
}

BallMap map_of_function(const FunctionData& fd, const Gus& x, const Gus& y, MapMode mode) {
    if (!fd.f) throw NoModulus("map needs the underlying function");
    BallMap r;
    if (mode == MapMode::Hom) {
        std::map<std::string, MetricId> omega = fd.omega;
        if (omega.empty()) {
            const Judgment h = check_homomorphism(fd.f, x, y, fd.samples);
            if (!h.is_proved()) throw NoModulus("function is not a homomorphism on samples: " + h.note);
            for (const auto& [k, v] : h.evidence["witness"].items()) omega[k] = v.get<MetricId>();
        }
        for (const auto& g : y.generators)
            if (!omega.count(g.id)) throw NoModulus("no source metric for target generator '" + g.id + "'");
        const auto f = fd.f;
        r.name = "hom";
        r.relates = [f, y, omega](const Ball& a, const Ball& b, std::size_t k) {
            for (const auto& id : b.metric.gens)
                if (!metric_leq(omega.at(id), a.metric)) return Verdict::Refuted;
            return ball_leq(y, Ball{b.metric, f(a.center), a.radius}, b, true, k);
        };
        r.image = [f, y, omega](const Ball& a, std::size_t k) {
            std::vector<Ball> out;
            for (const MetricId& rho : y.metric_ids()) {
                bool ok = true;
                for (const auto& id : rho.gens) ok = ok && metric_leq(omega.at(id), a.metric);
                if (!ok) continue;
                for (std::size_t j = 0; j <= k + 6; ++j)
                    out.push_back(Ball{rho, f(a.center), a.radius * (Rational(1) + Rational::pow2(-static_cast<long>(j)))});
            }
            return out;
        };
    } else {
        if (!fd.image_box) throw NoModulus("continuous mode needs image boxes for balls");
        r.name = "cont";
        r.relates = [fd, y](const Ball& a, const Ball& b, std::size_t) { return continuous_relates(fd, y, a, b).verdict; };
        r.image = [fd, y](const Ball& a, std::size_t k) {
            std::vector<Ball> out;
            const auto cell = fd.image_box(a);
            if (!cell) return out;
            Point c;
            Rational reach(0);
            for (std::size_t i = 0; i < cell->lo.size(); ++i) {
                c.push_back(mid(cell->lo[i], cell->hi[i]));
                reach += cell->hi[i] - cell->lo[i];
            }
            for (const MetricId& rho : y.metric_ids())
                for (std::size_t j = 0; j <= k + 6; ++j)
                    out.push_back(Ball{rho, c, reach + Rational::pow2(-static_cast<long>(j))});
            return out;
        };
    }
    r.fiber = [x, r](const Ball& b, std::size_t k) { return fiber_sample(x, r, b, k); };
    r.fiber_near = [x](const Ball& anchor, const Ball&, std::size_t k) { return near_of(x, anchor, k); };
    return r;
}

BallMap completion_identity(const Gus& x) {
    BallMap r;
    r.name = "id";
    r.relates = [x](const Ball& a, const Ball& b, std::size_t k) { return ball_leq(x, a, b, true, k); };
    r.image = [](const Ball& a, std::size_t k) {
        std::vector<Ball> out;
        for (std::size_t j = 0; j <= k + 6; ++j)
            out.push_back(Ball{a.metric, a.center, a.radius * (Rational(1) + Rational::pow2(-static_cast<long>(j)))});
        return out;
    };
    r.fiber = [x](const Ball& b, std::size_t k) { return rc_enumerate(b, k); };
    r.fiber_near = [x](const Ball& anchor, const Ball&, std::size_t k) { return near_of(x, anchor, k); };
    return r;
}

}  // namespace lcomp
