// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/formal_topology.hpp"
#include "lcomp/gus.hpp"

namespace lcomp {

using Ball = FormalBall;

// U(X): formal balls under ≤_X with the shrink and uniform-cover axioms.
struct CompletionTopology {
    Gus space;
    FormalTopology<Ball> topology;
    bool localised = false;
};

CompletionTopology completion_topology(const Gus& g, bool localised = false);

// Finite sample of U_X: carrier grid centers, a few dyadic radii, every metric.
std::vector<Ball> sample_balls(const Gus& g, std::size_t k);

// Balls b <_X a over a dyadic center grid, plus the concentric shrinks.
std::vector<Ball> wb_enumerate(const Gus& g, const Ball& a, std::size_t k);
// b(x, ε(1 − 2^-j)) for j = 1..k+1.
std::vector<Ball> rc_enumerate(const Ball& a, std::size_t k);

// {b | b <_X a}, tagged so covers by it are recognised without search.
Subset<Ball> wb_subset(const Gus& g, const Ball& a);
// {b_d(x, δ) | δ < ε}.
Subset<Ball> rc_subset(const Gus& g, const Ball& a);

// C_d^ε, or C_d^ε ↓ a when `below` is given.
Subset<Ball> c_body(const Gus& g, const MetricId& d, const Rational& eps, const std::optional<Ball>& below);

// The completion's cover plugin. Proved carries a replayable certificate;
// Refuted only for finite U, with a point of a_* outside every member.
CoverJudgment<Ball> completion_cover(const Gus& g, const Ball& a, const Subset<Ball>& u, std::size_t budget);
bool verify_completion_cover(const Gus& g, const Ball& a, const Subset<Ball>& u, const json& certificate);

// ◇x = {c | x ∈ c_*}.
Subset<Ball> point_filter(const Gus& g, const Point& x);

// U(X) restricted to a finite set of balls, with every axiom body cut down to it.
FormalTopology<Ball> truncated_completion(const Gus& g, std::vector<Ball> balls, bool localised);

// U ⊑ V: some (d,ε) with U ↓ C_d^ε ≤_X V.
Judgment sq_below(const Gus& g, const std::vector<Ball>& u, const std::vector<Ball>& v, std::size_t budget);

// A point lying in every listed ball.
Judgment w_member(const Gus& g, const std::vector<std::pair<MetricId, Ball>>& a, std::size_t budget);

}  // namespace lcomp
