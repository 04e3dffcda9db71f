// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/completion.hpp"
#include "lcomp/products.hpp"
#include "lcomp/topology_map.hpp"

namespace lcomp {

struct NoModulus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using BallMap = TopologyMap<Ball, Ball>;

enum class MapMode { Hom, Continuous };

struct FunctionData {
    std::function<Point(const Point&)> f;
    // Continuous mode: a closed coordinate box containing f[a_*], or nullopt
    // when the ball is outside the known region of uniform continuity.
    std::function<std::optional<Cell>(const Ball&)> image_box;
    // Hom mode: ω_f, the source metric bounding each target generator.
    // Derived from check_homomorphism when empty.
    std::map<std::string, MetricId> omega;
    std::size_t samples = 6;
};

// Hom: a r b iff d ω_f ρ and b_ρ(f x, ε) <_Y b.
// Continuous: a r b iff some b' <_Y b has f[a_*] ⊆ b'_*; Proved evidence names b'.
// Throws NoModulus when the data for the mode is missing.
BallMap map_of_function(const FunctionData& fd, const Gus& x, const Gus& y, MapMode mode);

// Evidence for one continuous-mode pair: the intermediate ball b'.
Judgment continuous_relates(const FunctionData& fd, const Gus& y, const Ball& a, const Ball& b);

// Relation of the identity homomorphism, a r b iff a <_X b.
BallMap completion_identity(const Gus& x);

// Projections and pairing relating U(X×Y) to U(X)×U(Y).
struct ProductIso {
    Gus product;
    TopologyMap<Ball, Ball> r_x;                     // U(X×Y) → U(X)
    TopologyMap<Ball, Ball> r_y;                     // U(X×Y) → U(Y)
    TopologyMap<std::pair<Ball, Ball>, Ball> r;      // U(X)×U(Y) → U(X×Y)
};

ProductIso product_iso_witnesses(const Gus& x, const Gus& y);

// Splits a product generator id "(g,h)" at its top-level comma.
std::pair<std::string, std::string> split_pair_id(const std::string& id);
// First and second component metrics of a product metric.
std::pair<MetricId, MetricId> split_pair_metric(const MetricId& m);

// U(X)×U(Y) with a plugin deciding finite covers by rectangles of box balls.
FormalTopology<std::pair<Ball, Ball>> completion_pair_topology(const Gus& x, const Gus& y);

// Both iso equations on sampled base elements: for each sampled c, every
// sampled shrink of c is related to c by the round trip, and everything the
// round trip relates to c is covered by c.
Judgment check_product_iso(const ProductIso& iso, const Gus& x, const Gus& y, std::size_t samples,
                           std::size_t budget);

}  // namespace lcomp
