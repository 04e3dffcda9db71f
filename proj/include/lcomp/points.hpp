// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/maps.hpp"
#include "lcomp/reals.hpp"

namespace lcomp {

struct IncoherentSequence : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A formal point of U(X) as a choice function: approx(d, ε) is a carrier
// point x whose ball b_d(x, ε) belongs to the point.
struct PointApprox {
    Gus space;
    std::function<Point(const MetricId&, const Rational&)> approx;
    std::string label;

    Ball ball(const MetricId& d, const Rational& eps) const { return Ball{d, approx(d, eps), eps}; }
};

PointApprox point_of_element(const Gus& g, const Point& x);

// Regular sequences: d(seq m, seq n) ≤ 2^(1 − min(m,n)). The modulus is
// sampled on the first `samples` terms.
PointApprox point_of_cauchy(const Gus& g, std::function<Point(std::size_t)> seq, std::string label,
                            std::size_t samples = 8);

// Newton iterates for √s from ⌊√s⌋, with the iterate index capped at
// ⌈log₂(n+1)⌉ + 2 so term sizes stay small.
std::function<Point(std::size_t)> newton_sqrt(const Rational& s);

// Bounds on d̃(α, β) from approximants at 2^-k, k ≤ n. Upper is a running
// minimum; lower a running maximum and 0 for upper-only metrics.
Rational dist_upper(const PointApprox& a, const PointApprox& b, const MetricId& d, unsigned n);
Rational dist_lower(const PointApprox& a, const PointApprox& b, const MetricId& d, unsigned n);
// The sequence n ↦ dist_upper(…, n).
UpperRealApprox dist_approx(const PointApprox& a, const PointApprox& b, const MetricId& d);

// b ∈ α, decided by d̃(α, ◇x) against the radius.
Judgment member(const PointApprox& alpha, const Ball& b, std::size_t budget);

// Pt(r)(α) with approximants searched through r's image of α's balls.
// Queries throw BudgetExhausted when nothing is found within the budget.
PointApprox pt_map_apply(const BallMap& r, const PointApprox& alpha, const Gus& y, std::size_t budget);

// ◇x and α agree on the dyadic ball schedule around x and around α.
Judgment convergence_check(const PointApprox& alpha, const Point& x, std::size_t budget);
// Refuted by a sampled pair x ≠ y at distance 0 in every generator.
Judgment separated_check(const Gus& g, std::size_t samples);

// The filter {b | b ∈ α}. Enumeration lists α's own balls at 2^-j.
Subset<Ball> filter_of(const PointApprox& alpha, std::size_t budget);
// α_ℱ: centers of enumerated filter balls of the requested type.
PointApprox point_of_filter(const Gus& g, const Subset<Ball>& filter, std::size_t budget);
// Inhabited, upward closed, meets inside, Cauchy, on sampled balls.
Judgment check_filter(const Gus& g, const Subset<Ball>& filter, std::size_t samples, std::size_t budget);

}  // namespace lcomp
