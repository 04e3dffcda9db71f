// SPDX-License-Identifier: Apache-2.0
#include "lcomp/points.hpp"

#include <algorithm>
#include <cmath>

namespace lcomp {

namespace {

Rational dyadic(std::size_t k) { return Rational::pow2(-static_cast<long>(k)); }

// Bounds on d̃(α, β) read off the approximants at 2^-k.
std::pair<Bound, Bound> bounds_at(const PointApprox& a, const PointApprox& b, const MetricId& d, unsigned k) {
    const Rational eps = dyadic(k);
    const DistanceInterval di = metric_eval(a.space, d, a.approx(d, eps), b.approx(d, eps), k);
    const Bound hi = di.hi.finite() ? Bound(di.hi.value() + eps + eps) : di.hi;
    Bound lo = Bound(0);
    if (!di.upper_only && di.lo.finite()) lo = max(lo, Bound(di.lo.value() - eps - eps));
    return {lo, hi};
}

std::vector<MetricId> probe_metrics(const Gus& g) {
    std::vector<MetricId> ms = g.metric_ids();
    if (ms.size() > 3) ms.resize(3);
    const MetricId full = g.full_metric();
    if (std::find(ms.begin(), ms.end(), full) == ms.end()) ms.push_back(full);
    return ms;
}

bool upper_only(const Gus& g, const MetricId& d) {
    for (const auto& id : d.gens)
        if (!g.generator(id).dedekind) return true;
    return false;
}

}  // namespace

PointApprox point_of_element(const Gus& g, const Point& x) {
    if (!g.in_carrier(x)) throw std::invalid_argument("point " + point_str(x) + " is not in " + g.name);
    return PointApprox{g, [x](const MetricId&, const Rational&) { return x; }, "◇" + point_str(x)};
}

PointApprox point_of_cauchy(const Gus& g, std::function<Point(std::size_t)> seq, std::string label, std::size_t samples) {
    const MetricId full = g.full_metric();
    for (std::size_t m = 0; m < samples; ++m)
        for (std::size_t n = m + 1; n < samples; ++n) {
            const Rational bound = Rational::pow2(1 - static_cast<long>(m));
            if (metric_compare(g, full, seq(m), seq(n), bound, false, 32) == Verdict::Refuted)
                throw IncoherentSequence("terms " + std::to_string(m) + " and " + std::to_string(n) + " of " + label +
                                         " are farther apart than 2^(1-" + std::to_string(m) + ")");
        }
    auto approx = [seq](const MetricId&, const Rational& eps) {
        std::size_t n = 0;
        while (!(Rational::pow2(2 - static_cast<long>(n)) < eps)) ++n;
        return seq(n);
    };
    return PointApprox{g, approx, std::move(label)};
}

std::function<Point(std::size_t)> newton_sqrt(const Rational& s) {
    if (s.sign() < 0) throw std::invalid_argument("newton_sqrt of a negative number");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), mpz_class(s.floor()).get_mpz_t());
    Rational x0 = r == 0 ? Rational(1) : Rational(mpq_class(r));
    return [s, x0](std::size_t n) {
        const std::size_t cap = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n + 1)))) + 2;
        Rational x = x0;
        for (std::size_t i = 0; i < std::min(n, cap); ++i) x = (x + s / x) / Rational(2);
        return Point{x};
    };
}

Rational dist_upper(const PointApprox& a, const PointApprox& b, const MetricId& d, unsigned n) {
    std::optional<Rational> best;
    for (unsigned k = 0; k <= n; ++k) {
        const Bound hi = bounds_at(a, b, d, k).second;
        if (hi.finite() && (!best || hi.value() < *best)) best = hi.value();
    }
    if (!best) throw std::runtime_error("no finite distance bound");
    return *best;
}

Rational dist_lower(const PointApprox& a, const PointApprox& b, const MetricId& d, unsigned n) {
    Rational best(0);
    for (unsigned k = 0; k <= n; ++k) {
        const Bound lo = bounds_at(a, b, d, k).first;
        if (lo.finite()) best = max(best, lo.value());
    }
    return best;
}

UpperRealApprox dist_approx(const PointApprox& a, const PointApprox& b, const MetricId& d) {
    return UpperRealApprox::from_query([a, b, d](unsigned n) {
        const Bound hi = bounds_at(a, b, d, n).second;
        return hi;
    });
}

Judgment member(const PointApprox& alpha, const Ball& b, std::size_t budget) {
    const PointApprox at = point_of_element(alpha.space, b.center);
    const bool two_sided = !upper_only(alpha.space, b.metric);
    for (unsigned k = 0; k <= budget; ++k) {
        const auto [lo, hi] = bounds_at(alpha, at, b.metric, k);
        if (hi.finite() && hi.value() < b.radius)
            return Judgment::proved("d̃(α, ◇x) < ε", {{"upper", hi.value()}, {"k", k}});
        if (two_sided && lo.finite() && !(lo.value() < b.radius))
            return Judgment::refuted("d̃(α, ◇x) ≥ ε", {{"lower", lo.value()}, {"k", k}});
    }
    return Judgment::unknown("distance too close to the radius", budget);
}

PointApprox pt_map_apply(const BallMap& r, const PointApprox& alpha, const Gus& y, std::size_t budget) {
    const MetricId full_x = alpha.space.full_metric(), full_y = y.full_metric();
    auto approx = [r, alpha, full_x, full_y, budget](const MetricId& rho, const Rational& delta) {
        // The search scale starts where 2^-k first drops to δ.
        std::size_t k0 = 0;
        while (delta < dyadic(k0)) ++k0;
        for (std::size_t k = k0; k <= k0 + budget; ++k) {
            const Ball a = alpha.ball(full_x, dyadic(k));
            std::vector<Ball> cands;
            for (const Ball& img : r.image(a, k)) {
                cands.push_back(img);
                cands.push_back(Ball{img.metric, img.center, delta});
                cands.push_back(Ball{full_y, img.center, delta});
            }
            std::stable_sort(cands.begin(), cands.end(),
                             [](const Ball& p, const Ball& q) { return q.radius < p.radius; });
            for (const Ball& c : cands)
                if (metric_leq(rho, c.metric) && c.radius <= delta && r.holds(a, c, k)) return c.center;
        }
        throw BudgetExhausted("no image ball of radius " + delta.str() + " within budget " + std::to_string(budget));
    };
    return PointApprox{y, approx, r.name + "(" + alpha.label + ")"};
}

Judgment convergence_check(const PointApprox& alpha, const Point& x, std::size_t budget) {
    const Gus& g = alpha.space;
    for (std::size_t k = 0; k <= budget; ++k)
        for (const MetricId& d : probe_metrics(g)) {
            const Rational eps = dyadic(k);
            for (const Point& c : {x, alpha.approx(d, eps)}) {
                const Ball b{d, c, eps};
                const Verdict in_x = ball_has(g, b, x, 32);
                const Verdict in_a = member(alpha, b, budget + 8).verdict;
                if (in_x != Verdict::Unknown && in_a != Verdict::Unknown && in_x != in_a)
                    return Judgment::refuted("◇x and α disagree on a ball",
                                             {{"ball", b}, {"in_x", to_string(in_x)}, {"in_alpha", to_string(in_a)}});
            }
        }
    return Judgment::proved("no disagreement on the dyadic schedule", {{"levels", budget + 1}});
}

Judgment separated_check(const Gus& g, std::size_t samples) {
    const std::vector<Point> pts = g.enumerate(samples);
    const MetricId full = g.full_metric();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i] == pts[j]) continue;
            const DistanceInterval d = metric_eval(g, full, pts[i], pts[j], 16);
            if (d.hi == Bound(0))
                return Judgment::refuted("distinct points at distance 0",
                                         {{"x", point_to_json(pts[i])}, {"y", point_to_json(pts[j])}});
        }
    return Judgment::proved("sampled pairs are separated", {{"points", pts.size()}});
}

Subset<Ball> filter_of(const PointApprox& alpha, std::size_t budget) {
    Subset<Ball> s;
    s.contains = [alpha, budget](const Ball& b) { return member(alpha, b, budget).is_proved(); };
    s.enumerate = [alpha](std::size_t k) {
        std::vector<Ball> out;
        for (const MetricId& d : alpha.space.metric_ids())
            for (std::size_t j = 0; j <= k; ++j) out.push_back(alpha.ball(d, dyadic(j)));
        return out;
    };
    return s;
}

PointApprox point_of_filter(const Gus& g, const Subset<Ball>& filter, std::size_t budget) {
    auto approx = [g, filter, budget](const MetricId& d, const Rational& eps) {
        for (std::size_t k = 0; k <= budget; ++k)
            for (const Ball& b : filter.members(k))
                if (metric_leq(d, b.metric) && b.radius <= eps && filter.contains(b)) return b.center;
        throw BudgetExhausted("filter has no ball of radius " + eps.str() + " within budget");
    };
    return PointApprox{g, approx, "α_F"};
}

Judgment check_filter(const Gus& g, const Subset<Ball>& filter, std::size_t samples, std::size_t budget) {
    const std::vector<Ball> in = filter.members(samples);
    for (const Ball& b : in)
        if (!filter.contains(b)) return Judgment::refuted("enumerated ball is not in the filter", {{"ball", b}});
    // Cauchy: every type (d, 2^-j) is represented.
    for (const MetricId& d : probe_metrics(g))
        for (std::size_t j = 0; j <= samples; ++j) {
            bool found = false;
            for (const Ball& b : in) found = found || (metric_leq(d, b.metric) && b.radius <= dyadic(j));
            if (found) continue;
            if (filter.finite)
                return Judgment::refuted("no filter ball of the given type", {{"metric", d}, {"eps", dyadic(j)}});
            return Judgment::unknown("no sampled filter ball of the given type", budget);
        }
    // Upward closed: enlarging the radius keeps a member.
    for (const Ball& b : in) {
        const Ball up{b.metric, b.center, b.radius * Rational(2)};
        if (ball_leq(g, b, up, false, budget) == Verdict::Proved && !filter.contains(up))
            return Judgment::refuted("not upward closed", {{"ball", b}, {"above", up}});
    }
    // Two members have a common member below both. Pairs near the finest
    // sampled radius have no room for one in the sample.
    Rational finest = in.empty() ? Rational(0) : in.front().radius;
    for (const Ball& b : in) finest = min(finest, b.radius);
    for (std::size_t i = 0; i < in.size(); ++i)
        for (std::size_t j = i + 1; j < in.size(); ++j) {
            if (in[i].radius < finest * Rational(4) || in[j].radius < finest * Rational(4)) continue;
            const MetricId d = in[i].metric.join(in[j].metric);
            bool found = false;
            for (const Ball& c : in)
                if (metric_leq(d, c.metric) && ball_leq(g, c, in[i], false, budget) == Verdict::Proved &&
                    ball_leq(g, c, in[j], false, budget) == Verdict::Proved) {
                    found = true;
                    break;
                }
            if (!found) return Judgment::unknown("no common refinement among the sampled balls", budget);
        }
    return Judgment::proved("filter conditions hold on samples", {{"balls", in.size()}});
}

}  // namespace lcomp
