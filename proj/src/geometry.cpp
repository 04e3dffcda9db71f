// SPDX-License-Identifier: Apache-2.0
#include "lcomp/geometry.hpp"

#include <algorithm>

namespace lcomp {

bool AxisRange::contains(const Rational& x) const {
    if (lo && (x < *lo || (x == *lo && !lo_closed))) return false;
    if (hi && (x > *hi || (x == *hi && !hi_closed))) return false;
    return true;
}

bool AxisRange::empty() const {
    if (!lo || !hi) return false;
    return *lo > *hi || (*lo == *hi && !(lo_closed && hi_closed));
}

AxisRange AxisRange::meet(const AxisRange& o) const {
    AxisRange r = *this;
    if (o.lo && (!r.lo || *o.lo > *r.lo)) {
        r.lo = o.lo;
        r.lo_closed = o.lo_closed;
    } else if (o.lo && *o.lo == *r.lo) {
        r.lo_closed = r.lo_closed && o.lo_closed;
    }
    if (o.hi && (!r.hi || *o.hi < *r.hi)) {
        r.hi = o.hi;
        r.hi_closed = o.hi_closed;
    } else if (o.hi && *o.hi == *r.hi) {
        r.hi_closed = r.hi_closed && o.hi_closed;
    }
    return r;
}

bool AxisRange::inside(const AxisRange& o) const {
    if (empty()) return true;
    if (o.lo) {
        if (!lo) return false;
        if (*lo < *o.lo || (*lo == *o.lo && lo_closed && !o.lo_closed)) return false;
    }
    if (o.hi) {
        if (!hi) return false;
        if (*hi > *o.hi || (*hi == *o.hi && hi_closed && !o.hi_closed)) return false;
    }
    return true;
}

Rational squared_distance(const Point& p, const Point& q) {
    Rational s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Rational d = p[i] - q[i];
        s += d * d;
    }
    return s;
}

bool Region::contains(const Point& p) const {
    for (std::size_t i = 0; i < box.size(); ++i)
        if (!box[i].contains(p[i])) return false;
    for (const Disk& d : disks)
        if (!(squared_distance(p, d.center) < d.r2)) return false;
    return true;
}

std::string point_str(const Point& p) {
    if (p.size() == 1) return p[0].str();
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + p[i].str();
    return s + ")";
}

json point_to_json(const Point& p) {
    if (p.size() == 1) return p[0].str();
    json a = json::array();
    for (const auto& x : p) a.push_back(x.str());
    return a;
}

json region_to_json(const Region& r) {
    json j;
    json box = json::array();
    for (const AxisRange& a : r.box) {
        json ax;
        ax["lo"] = a.lo ? json(a.lo->str()) : json("-inf");
        ax["hi"] = a.hi ? json(a.hi->str()) : json("inf");
        ax["closed"] = {a.lo_closed, a.hi_closed};
        box.push_back(ax);
    }
    j["box"] = box;
    if (!r.disks.empty()) {
        json ds = json::array();
        for (const Disk& d : r.disks) ds.push_back({{"center", point_to_json(d.center)}, {"r2", d.r2.str()}});
        j["disks"] = ds;
    }
    return j;
}

std::optional<Cell> bounding_cell(const Region& r) {
    Cell c;
    for (std::size_t i = 0; i < r.dim(); ++i) {
        std::optional<Rational> lo = r.box[i].lo, hi = r.box[i].hi;
        for (const Disk& d : r.disks) {
            const Rational rad = sqrt_enclosure(d.r2, 30).hi;
            const Rational dl = d.center[i] - rad, dh = d.center[i] + rad;
            if (!lo || dl > *lo) lo = dl;
            if (!hi || dh < *hi) hi = dh;
        }
        if (!lo || !hi) return std::nullopt;
        c.lo.push_back(*lo);
        c.hi.push_back(std::max(*lo, *hi));
    }
    return c;
}

namespace {

constexpr std::size_t kCellCap = 400000;

std::vector<AxisRange> clip(const Cell& c, const std::vector<AxisRange>& box) {
    std::vector<AxisRange> k;
    for (std::size_t i = 0; i < c.lo.size(); ++i) k.push_back(AxisRange::closed(c.lo[i], c.hi[i]).meet(box[i]));
    return k;
}

bool any_empty(const std::vector<AxisRange>& k) {
    return std::any_of(k.begin(), k.end(), [](const AxisRange& a) { return a.empty(); });
}

Rational squared_distance_to_cell(const Point& p, const Cell& c) {
    Rational s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational d;
        if (p[i] < c.lo[i]) d = c.lo[i] - p[i];
        else if (p[i] > c.hi[i]) d = p[i] - c.hi[i];
        s += d * d;
    }
    return s;
}

// Corners of the closure of the clipped box k.
std::vector<Point> corners(const std::vector<AxisRange>& k) {
    std::vector<Point> out{Point{}};
    for (const AxisRange& a : k) {
        std::vector<Point> next;
        for (const Point& p : out) {
            Point x = p, y = p;
            x.push_back(*a.lo);
            y.push_back(*a.hi);
            next.push_back(std::move(x));
            if (*a.hi != *a.lo) next.push_back(std::move(y));
        }
        out = std::move(next);
    }
    return out;
}

// Included endpoints and the midpoint, per axis.
std::vector<Point> probes(const std::vector<AxisRange>& k) {
    std::vector<Point> out{Point{}};
    for (const AxisRange& a : k) {
        std::vector<Rational> vals{mid(*a.lo, *a.hi)};
        if (a.lo_closed && *a.lo != vals[0]) vals.push_back(*a.lo);
        if (a.hi_closed && *a.hi != vals[0]) vals.push_back(*a.hi);
        std::vector<Point> next;
        for (const Point& p : out)
            for (const Rational& v : vals) {
                Point q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        out = std::move(next);
        if (out.size() > 729) break;
    }
    return out;
}

bool cell_outside(const Region& t, const Cell& c) {
    if (any_empty(clip(c, t.box))) return true;
    for (const Disk& d : t.disks)
        if (squared_distance_to_cell(d.center, c) >= d.r2) return true;
    return false;
}

// (cell ∩ target) ⊆ member.
bool cell_inside(const Region& t, const Cell& c, const Region& m) {
    const auto k = clip(c, t.box);
    for (std::size_t i = 0; i < k.size(); ++i)
        if (!k[i].inside(m.box[i])) return false;
    if (m.disks.empty()) return true;
    const auto cs = corners(k);
    for (const Disk& e : m.disks) {
        bool ok = std::all_of(cs.begin(), cs.end(), [&](const Point& p) { return squared_distance(p, e.center) < e.r2; });
        for (std::size_t di = 0; !ok && di < t.disks.size(); ++di) {
            const Disk& d = t.disks[di];
            ok = std::all_of(cs.begin(), cs.end(), [&](const Point& p) {
                return d.r2 - e.r2 + squared_distance(p, e.center) - squared_distance(p, d.center) <= Rational(0);
            });
        }
        if (!ok) return false;
    }
    return true;
}

std::vector<std::vector<Rational>> critical_values(const std::vector<const Region*>& rs, std::size_t dim) {
    std::vector<std::vector<Rational>> crit(dim);
    for (const Region* r : rs) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (r->box[i].lo) crit[i].push_back(*r->box[i].lo);
            if (r->box[i].hi) crit[i].push_back(*r->box[i].hi);
        }
        for (const Disk& d : r->disks)
            for (std::size_t i = 0; i < dim; ++i) crit[i].push_back(d.center[i]);
    }
    for (auto& v : crit) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return crit;
}

std::pair<std::size_t, Rational> choose_split(const Cell& c, const std::vector<std::vector<Rational>>& crit) {
    std::size_t best_axis = 0, best_count = 0;
    for (std::size_t i = 0; i < c.lo.size(); ++i) {
        std::size_t n = 0;
        for (const Rational& v : crit[i]) n += (c.lo[i] < v && v < c.hi[i]) ? 1 : 0;
        if (n > best_count) {
            best_count = n;
            best_axis = i;
        }
    }
    if (best_count > 0) {
        std::vector<Rational> inner;
        for (const Rational& v : crit[best_axis])
            if (c.lo[best_axis] < v && v < c.hi[best_axis]) inner.push_back(v);
        return {best_axis, inner[inner.size() / 2]};
    }
    std::size_t axis = 0;
    Rational width = c.hi[0] - c.lo[0];
    for (std::size_t i = 1; i < c.lo.size(); ++i)
        if (c.hi[i] - c.lo[i] > width) {
            width = c.hi[i] - c.lo[i];
            axis = i;
        }
    return {axis, mid(c.lo[axis], c.hi[axis])};
}

std::pair<Cell, Cell> split(const Cell& c, std::size_t axis, const Rational& at) {
    Cell a = c, b = c;
    a.hi[axis] = at;
    b.lo[axis] = at;
    return {a, b};
}

struct CoverSearch {
    const Region& target;
    const std::vector<Region>& members;
    std::size_t max_depth;
    std::vector<std::vector<Rational>> crit;
    std::size_t cells = 0;

    enum class State { Covered, Witness, Unknown };
    struct Out {
        State state;
        json tree;
        std::optional<Point> witness;
    };

    Out run(const Cell& c, std::size_t depth) {
        ++cells;
        if (cell_outside(target, c)) return {State::Covered, json{{"out", true}}, std::nullopt};
        for (std::size_t j = 0; j < members.size(); ++j)
            if (cell_inside(target, c, members[j])) return {State::Covered, json{{"in", j}}, std::nullopt};
        for (const Point& p : probes(clip(c, target.box))) {
            if (!target.contains(p)) continue;
            if (std::none_of(members.begin(), members.end(), [&](const Region& m) { return m.contains(p); }))
                return {State::Witness, json(), p};
        }
        if (depth >= max_depth || cells >= kCellCap) return {State::Unknown, json(), std::nullopt};
        const auto [axis, at] = choose_split(c, crit);
        const auto [a, b] = split(c, axis, at);
        Out lo = run(a, depth + 1);
        if (lo.state == State::Witness) return lo;
        Out hi = run(b, depth + 1);
        if (hi.state == State::Witness) return hi;
        if (lo.state == State::Unknown || hi.state == State::Unknown) return {State::Unknown, json(), std::nullopt};
        return {State::Covered, json{{"axis", axis}, {"at", at.str()}, {"lo", std::move(lo.tree)}, {"hi", std::move(hi.tree)}},
                std::nullopt};
    }
};

bool box_only(const Region& t, const std::vector<Region>& ms) {
    if (!t.disks.empty()) return false;
    return std::all_of(ms.begin(), ms.end(), [](const Region& m) { return m.disks.empty(); });
}

bool replay(const Region& t, const std::vector<Region>& ms, const Cell& c, const json& node) {
    if (!node.is_object()) return false;
    if (node.contains("out")) return cell_outside(t, c);
    if (node.contains("in")) {
        if (!node["in"].is_number_unsigned()) return false;
        const std::size_t j = node["in"].get<std::size_t>();
        return j < ms.size() && cell_inside(t, c, ms[j]);
    }
    if (!node.contains("axis") || !node.contains("at") || !node.contains("lo") || !node.contains("hi")) return false;
    const std::size_t axis = node["axis"].get<std::size_t>();
    if (axis >= c.lo.size()) return false;
    Rational at;
    try {
        at = Rational::parse(node["at"].get<std::string>());
    } catch (const std::exception&) {
        return false;
    }
    if (!(c.lo[axis] < at && at < c.hi[axis])) return false;
    const auto [a, b] = split(c, axis, at);
    return replay(t, ms, a, node["lo"]) && replay(t, ms, b, node["hi"]);
}

}  // namespace

RegionCover region_cover(const Region& target, const std::vector<Region>& members, std::size_t max_depth) {
    RegionCover out;
    const auto root = bounding_cell(target);
    if (!root) return out;
    std::vector<const Region*> all{&target};
    for (const Region& m : members) all.push_back(&m);
    CoverSearch s{target, members, box_only(target, members) ? max_depth + 64 : max_depth,
                  critical_values(all, target.dim())};
    auto r = s.run(*root, 0);
    out.cells = s.cells;
    if (r.state == CoverSearch::State::Covered) {
        out.verdict = Verdict::Proved;
        out.certificate = std::move(r.tree);
    } else if (r.state == CoverSearch::State::Witness) {
        out.verdict = Verdict::Refuted;
        out.witness = std::move(r.witness);
    }
    return out;
}

bool verify_region_cover(const Region& target, const std::vector<Region>& members, const json& certificate) {
    const auto root = bounding_cell(target);
    return root && replay(target, members, *root, certificate);
}

namespace {

struct MeetSearch {
    const Region& r;
    std::size_t max_depth;
    std::vector<std::vector<Rational>> crit;
    std::size_t cells = 0;

    // 1 found, 0 empty, -1 unknown
    int run(const Cell& c, std::size_t depth, Point& found) {
        ++cells;
        if (cell_outside(r, c)) return 0;
        for (const Point& p : probes(clip(c, r.box)))
            if (r.contains(p)) {
                found = p;
                return 1;
            }
        if (depth >= max_depth || cells >= kCellCap) return -1;
        const auto [axis, at] = choose_split(c, crit);
        const auto [a, b] = split(c, axis, at);
        const int x = run(a, depth + 1, found);
        if (x == 1) return 1;
        const int y = run(b, depth + 1, found);
        if (y == 1) return 1;
        return (x == 0 && y == 0) ? 0 : -1;
    }
};

}  // namespace

RegionMeet regions_meet(const std::vector<Region>& regions, std::size_t max_depth) {
    RegionMeet out;
    if (regions.empty()) return out;
    Region all;
    all.box = regions[0].box;
    for (const Region& g : regions) {
        for (std::size_t i = 0; i < all.box.size(); ++i) all.box[i] = all.box[i].meet(g.box[i]);
        all.disks.insert(all.disks.end(), g.disks.begin(), g.disks.end());
    }
    if (any_empty(all.box)) {
        out.verdict = Verdict::Refuted;
        return out;
    }
    const auto root = bounding_cell(all);
    if (!root) {
        Point p;
        for (const AxisRange& a : all.box) {
            if (a.lo && a.hi) p.push_back(mid(*a.lo, *a.hi));
            else if (a.lo) p.push_back(*a.lo + Rational(1));
            else if (a.hi) p.push_back(*a.hi - Rational(1));
            else p.push_back(Rational(0));
        }
        if (all.contains(p)) {
            out.verdict = Verdict::Proved;
            out.point = p;
        }
        return out;
    }
    MeetSearch s{all, box_only(all, {}) ? max_depth + 64 : max_depth, critical_values({&all}, all.dim())};
    Point p;
    const int r = s.run(*root, 0, p);
    if (r == 1) {
        out.verdict = Verdict::Proved;
        out.point = p;
    } else if (r == 0) {
        out.verdict = Verdict::Refuted;
    }
    return out;
}

}  // namespace lcomp
