// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/completion.hpp"

namespace lcomp {

struct MalformedInterval : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Interval = std::pair<Rational, Rational>;

struct IntervalCover {
    Verdict verdict = Verdict::Unknown;
    // {"target": [p,q], "order": [member indices in sweep order]}
    json certificate;
    std::optional<Rational> witness;
};

// Total decision of (p,q) ◁ U for open rational intervals.
IntervalCover decide_interval_cover(const Interval& target, const std::vector<Interval>& u);

// The chain for a shrink p < p' < q' < q read off a Proved certificate:
// pairs (interval, index of the member containing it).
std::vector<std::pair<Interval, std::size_t>> chain_for_shrink(const json& certificate, const std::vector<Interval>& u,
                                                                const Interval& shrink);
// p_0 = p', q_n = q', p_i ≤ p_{i+1} < q_i ≤ q_{i+1}, each link inside its member.
bool verify_chain(const std::vector<std::pair<Interval, std::size_t>>& chain, const std::vector<Interval>& u,
                  const Interval& shrink);

// Brute force: every grid shrink of the target has a chain of grid intervals
// drawn from members. Grid pitch 1/(4·denominator), so every open cell between
// endpoints on the 1/denominator lattice holds a strict shrink.
bool chain_oracle(const Interval& target, const std::vector<Interval>& u, long grid_denominator);

// Formal reals: open rational intervals under inclusion, covers decided by the sweep.
FormalTopology<Interval> formal_reals();

// Locally compact ball covers. Proved certificates add a shrink schedule:
// b_k = b(x, ε(1 − 2^-k)) covered by members shrunk to r(1 − 2^-j).
CoverJudgment<Ball> semidecide_lc_cover(const Gus& g, const Ball& a, const Subset<Ball>& u, std::size_t budget);
bool verify_lc_certificate(const Gus& g, const Ball& a, const Subset<Ball>& u, const json& certificate);

struct SubcoverResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<Ball> u0;
    json certificate;
    std::optional<Point> witness;
};

// Finite u₀ ⊆ u covering the whole of a totally bounded space.
SubcoverResult finite_subcover(const Gus& g, const Subset<Ball>& u, std::size_t budget);

}  // namespace lcomp
