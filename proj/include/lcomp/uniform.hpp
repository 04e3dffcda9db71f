// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/completion.hpp"

namespace lcomp {

// The uniform formal topology on balls: a ⪯ b iff a_* ⊆ b_*, uniformity
// {C_d^ε}, and the completion cover ◁̄ decided by pf_cover_check.
struct UniformTopology {
    Gus space;
    FormalTopology<Ball> topology;
};

UniformTopology uniform_topology(const Gus& g);

// C_d^ε as a tagged subset, so the covering axiom is recognised directly.
Subset<Ball> uniform_cover(const Gus& g, const MetricId& d, const Rational& eps);

// c ∈ St_{C_d^ε}(a): positivity of c ↓ a, read as the interiors meeting.
Judgment st_member(const Gus& g, const Ball& c, const MetricId& d, const Rational& eps, const Ball& a,
                   std::size_t budget);

// C_fine <* C_coarse on sampled members of C_fine.
Judgment star_refines(const Gus& g, const MetricId& fine_d, const Rational& fine_eps, const MetricId& coarse_d,
                      const Rational& coarse_eps, std::size_t budget);

// a ≺ b. Proved evidence names (d, ε). Refuted evidence is a point of the
// closure of a_* outside b_*, which every C_d^ε member around it exposes.
Judgment prec(const Gus& g, const Ball& a, const Ball& b, std::size_t budget);

CoverJudgment<Ball> pf_cover_check(const Gus& g, const Ball& a, const Subset<Ball>& u, std::size_t budget);
bool verify_pf_certificate(const Gus& g, const Ball& a, const Subset<Ball>& u, const json& certificate);

// a r_X b iff some b' <_X b has a_* ⊆ b'_*. Proved evidence carries b'.
Judgment r_x(const Gus& g, const Ball& a, const Ball& b, std::size_t budget);

}  // namespace lcomp
