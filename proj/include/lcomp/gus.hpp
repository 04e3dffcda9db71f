// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/geometry.hpp"
#include "lcomp/judgment.hpp"
#include "lcomp/rational.hpp"
#include "lcomp/reals.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lcomp {

struct InvalidMetricTable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotTotallyBounded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OracleMissing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rational enclosure of a distance; hi may be +inf.
struct DistanceInterval {
    Bound lo, hi;
    bool upper_only = false;
};

struct GeneratorMetric {
    enum class Form { Exact, Squared, Approx };
    // Ball shape in box carriers, used by the exact geometric oracle.
    enum class Shape { None, Sup, Euclid };

    std::string id;
    Form form = Form::Exact;
    Shape shape = Shape::None;
    // Exact: the distance. Squared: its square. nullopt is +inf.
    std::function<std::optional<Rational>(const Point&, const Point&)> value;
    // Approx: an enclosure of width ≤ 2^-n.
    std::function<DistanceInterval(const Point&, const Point&, unsigned n)> approx;
    bool symmetric = true;
    bool finite = true;
    bool dedekind = true;
};

DistanceInterval eval(const GeneratorMetric& g, const Point& x, const Point& y, unsigned n);

// d_g(x,y) ≤ c, or < c when strict.
Verdict generator_compare(const GeneratorMetric& g, const Point& x, const Point& y, const Rational& c, bool strict,
                          unsigned budget);

// Inhabited finite set of generator ids, kept sorted; denotes their sup.
struct MetricId {
    std::vector<std::string> gens;

    MetricId() = default;
    MetricId(std::vector<std::string> g);
    MetricId(std::initializer_list<std::string> g) : MetricId(std::vector<std::string>(g)) {}

    bool contains(const std::string& g) const;
    MetricId join(const MetricId& o) const;
    friend auto operator<=>(const MetricId&, const MetricId&) = default;
    friend bool operator==(const MetricId&, const MetricId&) = default;
};

// ρ ≤ d, decided by generator inclusion.
bool metric_leq(const MetricId& rho, const MetricId& d);

void to_json(json& j, const MetricId& m);
void from_json(const json& j, MetricId& m);

struct FormalBall {
    MetricId metric;
    Point center;
    Rational radius;

    friend auto operator<=>(const FormalBall&, const FormalBall&) = default;
    friend bool operator==(const FormalBall&, const FormalBall&) = default;
    std::string str() const;
};

void to_json(json& j, const FormalBall& b);
void from_json(const json& j, FormalBall& b);

FormalBall make_ball(MetricId m, Point center, Rational radius);

struct Gus;

struct CoverDecision {
    Verdict verdict = Verdict::Unknown;
    json certificate;
    std::optional<Point> witness;
    std::size_t work = 0;
};

// Geometry of a concrete space. Covers are decided in the completion.
class SpatialOracle {
public:
    virtual ~SpatialOracle() = default;
    virtual bool exact() const = 0;
    virtual bool locally_compact() const = 0;
    virtual Judgment ball_subset(const Gus& g, const FormalBall& a, const FormalBall& b, std::size_t budget) const = 0;
    // Proved carries a common point under evidence "point".
    virtual Judgment ball_meets(const Gus& g, const std::vector<FormalBall>& balls, std::size_t budget) const = 0;
    // Throws NotTotallyBounded.
    virtual std::vector<Point> eps_net(const Gus& g, const MetricId& m, const Rational& eps) const = 0;
    // a_* ⊆ ⋃ us_*.
    virtual CoverDecision cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                                std::size_t budget) const = 0;
    virtual bool verify_cover(const Gus& g, const FormalBall& a, const std::vector<FormalBall>& us,
                              const json& certificate) const = 0;
    // Closed coordinate box containing a_*.
    virtual std::optional<Cell> enclosing_cell(const Gus& g, const FormalBall& a) const = 0;
    // Region form of a_*, when the oracle is geometric.
    virtual std::optional<Region> region(const Gus& g, const FormalBall& a) const = 0;
};

struct Gus {
    std::string name;
    std::size_t dim = 1;
    std::vector<GeneratorMetric> generators;
    std::function<bool(const Point&)> in_carrier;
    // A budget-dependent prefix of the carrier.
    std::function<std::vector<Point>(std::size_t)> enumerate;
    std::shared_ptr<const SpatialOracle> oracle;
    // Carrier as a coordinate box, when it is one.
    std::optional<std::vector<AxisRange>> box;
    bool finite_carrier = false;

    const GeneratorMetric& generator(const std::string& id) const;
    bool has_generator(const std::string& id) const;
    MetricId full_metric() const;
    // All inhabited generator subsets.
    std::vector<MetricId> metric_ids() const;
    bool symmetric() const;
    const SpatialOracle& require_oracle() const;
};

DistanceInterval metric_eval(const Gus& g, const MetricId& m, const Point& x, const Point& y, unsigned n);

// d_m(x,y) ≤ c (strict: < c).
Verdict metric_compare(const Gus& g, const MetricId& m, const Point& x, const Point& y, const Rational& c, bool strict,
                       unsigned budget);

// a ≤_X b (strict: a <_X b), verdict only.
Verdict ball_leq(const Gus& g, const FormalBall& a, const FormalBall& b, bool strict, std::size_t budget);
// Same, with evidence.
Judgment ball_order(const Gus& g, const FormalBall& a, const FormalBall& b, bool strict, std::size_t budget);

// d(center, x) < radius, verdict only.
Verdict ball_has(const Gus& g, const FormalBall& a, const Point& x, std::size_t budget);
Judgment ball_contains(const Gus& g, const FormalBall& a, const Point& x, std::size_t budget);

// A ball c with a <_X c <_X b, from a certified a <_X b.
std::optional<FormalBall> interpolate(const Gus& g, const FormalBall& a, const FormalBall& b, std::size_t budget);

std::vector<Point> eps_net(const Gus& g, const MetricId& m, const Rational& eps);

// Space constructors.
Gus rational_line();
Gus unit_interval();
// metrics ⊆ {"sup","euclid"}; bounds give the carrier [lo,hi]ⁿ.
Gus rational_box(std::size_t n, std::vector<std::string> metrics,
                 std::optional<std::pair<Rational, Rational>> bounds = std::nullopt);
// Throws InvalidMetricTable.
Gus finite_discrete(const std::vector<std::vector<Rational>>& table, std::string name = "discrete");
// d(x,y) = 0 when x ≤ y and 1 otherwise; order pairs are closed reflexively and transitively.
Gus poset_space(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& order);
// d_f(x,x') = |f(x) − f(x')| on ℚ.
Gus function_seminorm(std::function<Rational(const Rational&)> f, std::string name);

// Picks the finite, geometric or fallback oracle from the carrier shape.
void attach_default_oracle(Gus& g);

// Coordinatewise max of generator pairs.
Gus gus_product(const Gus& x, const Gus& y);
// Product over a list with coordinates ≥ n frozen at the basepoint.
Gus gus_countable_truncation(const std::vector<Gus>& spaces, const std::vector<Point>& basepoint, std::size_t n);

// For each target generator, a source MetricId d with ρ(f x, f x') ≤ d(x,x') on samples.
Judgment check_homomorphism(const std::function<Point(const Point&)>& f, const Gus& x, const Gus& y,
                            std::size_t samples);

// Parses "p/q" scalars or arrays of them.
Point parse_point(const json& j);

}  // namespace lcomp
