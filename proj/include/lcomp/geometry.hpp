// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/judgment.hpp"
#include "lcomp/rational.hpp"

#include <optional>
#include <vector>

namespace lcomp {

using Point = std::vector<Rational>;

// One coordinate range; a missing bound is unbounded.
struct AxisRange {
    std::optional<Rational> lo, hi;
    bool lo_closed = false, hi_closed = false;

    static AxisRange open(const Rational& a, const Rational& b) { return {a, b, false, false}; }
    static AxisRange closed(const Rational& a, const Rational& b) { return {a, b, true, true}; }
    static AxisRange all() { return {}; }

    bool contains(const Rational& x) const;
    bool empty() const;
    AxisRange meet(const AxisRange& o) const;
    // Every point of *this lies in o.
    bool inside(const AxisRange& o) const;
};

// Open disk |p − center|² < r2.
struct Disk {
    Point center;
    Rational r2;
};

// Intersection of a box of axis ranges and some disks, in ℝⁿ.
struct Region {
    std::vector<AxisRange> box;
    std::vector<Disk> disks;

    std::size_t dim() const { return box.size(); }
    bool contains(const Point& p) const;
};

json region_to_json(const Region& r);

// Closed rational cell [lo, hi].
struct Cell {
    Point lo, hi;
};

struct RegionCover {
    Verdict verdict = Verdict::Unknown;
    json certificate;               // split tree with leaf assignments
    std::optional<Point> witness;   // a rational point of the target missed by every member
    std::size_t cells = 0;
};

// Decides target ⊆ ⋃ members over ℝⁿ by cell subdivision. Splits go first
// through critical coordinates, then through midpoints up to max_depth.
// Exact for box-only inputs.
RegionCover region_cover(const Region& target, const std::vector<Region>& members, std::size_t max_depth);

// Replays a region_cover certificate.
bool verify_region_cover(const Region& target, const std::vector<Region>& members, const json& certificate);

struct RegionMeet {
    Verdict verdict = Verdict::Unknown;
    std::optional<Point> point;
};

// Searches for a common rational point; Refuted when subdivision shows the
// intersection empty.
RegionMeet regions_meet(const std::vector<Region>& regions, std::size_t max_depth);

// Closed bounding cell, if the region is bounded.
std::optional<Cell> bounding_cell(const Region& r);

// |p − q|².
Rational squared_distance(const Point& p, const Point& q);

std::string point_str(const Point& p);
json point_to_json(const Point& p);

}  // namespace lcomp
