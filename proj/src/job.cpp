// SPDX-License-Identifier: Apache-2.0
#include "lcomp/job.hpp"

#include "lcomp/deciders.hpp"
#include "lcomp/points.hpp"
#include "lcomp/uniform.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

namespace lcomp {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) { throw JobError("ParseError", path, msg); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) parse_fail(path, "missing field '" + key + "'");
    return obj[key];
}

Rational rational_at(const json& j, const std::string& path) {
    try {
        return j.get<Rational>();
    } catch (const std::exception& e) {
        parse_fail(path, std::string("expected a rational: ") + e.what());
    }
}

std::size_t natural_at(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail(path, "expected a natural number");
    return j.get<std::size_t>();
}

struct Context {
    std::map<std::string, Gus> spaces;
    std::map<std::string, PointApprox> points;
};

Gus build_space(const json& s, const std::string& path) {
    const std::string kind = field(s, "kind", path).get<std::string>();
    Gus g;
    if (kind == "rational_line") {
        g = rational_line();
    } else if (kind == "unit_interval") {
        g = unit_interval();
    } else if (kind == "rational_box") {
        const std::size_t dim = natural_at(field(s, "dim", path), path + "/dim");
        if (dim == 0) parse_fail(path + "/dim", "dimension must be positive");
        std::vector<std::string> metrics;
        const json& ms = field(s, "metrics", path);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const std::string m = ms[i].get<std::string>();
            if (m != "sup" && m != "euclid") parse_fail(path + "/metrics/" + std::to_string(i), "unknown metric '" + m + "'");
            metrics.push_back(m);
        }
        std::optional<std::pair<Rational, Rational>> bounds;
        if (s.contains("bounds")) {
            const json& b = s["bounds"];
            if (!b.is_array() || b.size() != 2) parse_fail(path + "/bounds", "expected [lo, hi]");
            bounds = std::pair{rational_at(b[0], path + "/bounds/0"), rational_at(b[1], path + "/bounds/1")};
            if (!(bounds->first < bounds->second)) parse_fail(path + "/bounds", "empty carrier");
        }
        g = rational_box(dim, metrics, bounds);
    } else if (kind == "finite_discrete") {
        const json& t = field(s, "table", path);
        std::vector<std::vector<Rational>> table;
        for (std::size_t i = 0; i < t.size(); ++i) {
            std::vector<Rational> row;
            for (std::size_t j = 0; j < t[i].size(); ++j)
                row.push_back(rational_at(t[i][j], path + "/table/" + std::to_string(i) + "/" + std::to_string(j)));
            table.push_back(std::move(row));
        }
        try {
            g = finite_discrete(table);
        } catch (const InvalidMetricTable& e) {
            parse_fail(path + "/table", e.what());
        }
    } else {
        parse_fail(path + "/kind", "unknown space kind '" + kind + "'");
    }
    return g;
}

const Gus& space_ref(const Context& ctx, const json& j, const std::string& path) {
    if (!j.is_string()) parse_fail(path, "expected a space name");
    auto it = ctx.spaces.find(j.get<std::string>());
    if (it == ctx.spaces.end()) throw JobError("UnknownSpace", path, "no space named '" + j.get<std::string>() + "'");
    return it->second;
}

Point point_in(const Gus& g, const json& j, const std::string& path) {
    Point p;
    try {
        p = parse_point(j);
    } catch (const std::exception& e) {
        parse_fail(path, e.what());
    }
    if (p.size() != g.dim) parse_fail(path, "point has dimension " + std::to_string(p.size()) + ", space has " + std::to_string(g.dim));
    if (!g.in_carrier(p)) parse_fail(path, "point " + point_str(p) + " is outside " + g.name);
    return p;
}

MetricId metric_in(const Gus& g, const json& ms, const std::string& path) {
    if (!ms.is_array() || ms.empty()) parse_fail(path, "expected a non-empty list of generator ids");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::string id = ms[i].is_string() ? ms[i].get<std::string>() : ms[i].dump();
        if (!g.has_generator(id)) parse_fail(path + "/" + std::to_string(i), "unknown metric generator '" + id + "'");
        ids.push_back(id);
    }
    return MetricId(ids);
}

Ball ball_in(const Gus& g, const json& j, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected {metric?, center, radius}");
    const MetricId m = j.contains("metric") ? metric_in(g, j["metric"], path + "/metric") : g.full_metric();
    const Point c = point_in(g, field(j, "center", path), path + "/center");
    const Rational r = rational_at(field(j, "radius", path), path + "/radius");
    if (r.sign() <= 0) parse_fail(path + "/radius", "radius must be positive");
    return Ball{m, c, r};
}

std::vector<Ball> balls_in(const Gus& g, const json& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected a list of balls");
    std::vector<Ball> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(ball_in(g, j[i], path + "/" + std::to_string(i)));
    return out;
}

Interval interval_in(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) parse_fail(path, "expected [lo, hi]");
    Interval i{rational_at(j[0], path + "/0"), rational_at(j[1], path + "/1")};
    if (!(i.first < i.second)) parse_fail(path, "interval is empty");
    return i;
}

PointApprox build_point(const Context& ctx, const json& p, const std::string& path) {
    const Gus& g = space_ref(ctx, field(p, "space", path), path + "/space");
    if (p.contains("value")) return point_of_element(g, point_in(g, p["value"], path + "/value"));
    if (p.contains("newton_sqrt")) {
        if (g.dim != 1) parse_fail(path, "newton_sqrt needs a one-dimensional space");
        const Rational s = rational_at(p["newton_sqrt"], path + "/newton_sqrt");
        if (s.sign() < 0) parse_fail(path + "/newton_sqrt", "negative argument");
        try {
            return point_of_cauchy(g, newton_sqrt(s), "√" + s.str());
        } catch (const IncoherentSequence& e) {
            parse_fail(path, e.what());
        }
    }
    parse_fail(path, "expected 'value' or 'newton_sqrt'");
}

const PointApprox& point_ref(const Context& ctx, const json& j, const std::string& path) {
    if (!j.is_string()) parse_fail(path, "expected a point name");
    auto it = ctx.points.find(j.get<std::string>());
    if (it == ctx.points.end()) parse_fail(path, "no point named '" + j.get<std::string>() + "'");
    return it->second;
}

Context build_context(const json& doc, std::vector<Diagnostic>* diags) {
    Context ctx;
    auto guard = [&](const std::function<void()>& f) {
        try {
            f();
        } catch (const JobError& e) {
            if (!diags) throw;
            diags->push_back({e.path, e.what()});
        } catch (const json::exception& e) {
            if (!diags) throw;
            diags->push_back({"", e.what()});
        }
    };
    if (doc.contains("spaces")) {
        if (!doc["spaces"].is_object()) parse_fail("/spaces", "expected an object of named spaces");
        for (const auto& [name, s] : doc["spaces"].items())
            guard([&] {
                Gus g = build_space(s, "/spaces/" + name);
                g.name = name;
                ctx.spaces.emplace(name, std::move(g));
            });
    }
    if (doc.contains("points")) {
        if (!doc["points"].is_object()) parse_fail("/points", "expected an object of named points");
        for (const auto& [name, p] : doc["points"].items())
            guard([&] { ctx.points.emplace(name, build_point(ctx, p, "/points/" + name)); });
    }
    return ctx;
}

json witness_json(const std::optional<Point>& w) { return w ? point_to_json(*w) : json(); }

bool replay_ok(const FormalTopology<Ball>& t, const Trace<Ball>& tr, const Subset<Ball>& u, std::size_t budget) {
    return replay(t, tr, u, budget).is_proved();
}

struct Prepared {
    std::string kind;
    std::size_t budget = 0;
    std::function<json(bool replay)> execute;
};

json judgment_record(const CoverJudgment<Ball>& j) {
    json r{{"verdict", to_string(j.verdict)}, {"note", j.note}};
    if (j.trace) r["certificate"] = j.trace->to_json();
    if (j.witness) r["witness"] = j.witness->description;
    r["budget_spent"] = j.budget_spent;
    return r;
}

Prepared prepare(const Context& ctx, const json& q, const std::string& path, std::size_t default_budget) {
    Prepared p;
    p.kind = field(q, "kind", path).get<std::string>();
    p.budget = q.contains("budget") ? natural_at(q["budget"], path + "/budget") : default_budget;
    const std::size_t budget = p.budget;

    if (p.kind == "interval-cover") {
        const Interval target = interval_in(field(q, "target", path), path + "/target");
        std::vector<Interval> u;
        const json& us = field(q, "u", path);
        if (!us.is_array()) parse_fail(path + "/u", "expected a list of intervals");
        for (std::size_t i = 0; i < us.size(); ++i) u.push_back(interval_in(us[i], path + "/u/" + std::to_string(i)));
        p.execute = [target, u](bool replay) {
            const IntervalCover d = decide_interval_cover(target, u);
            json r{{"verdict", to_string(d.verdict)}};
            if (d.verdict == Verdict::Proved) {
                json chain = json::array();
                for (const auto& i : d.certificate["order"]) {
                    const Interval& m = u[i.get<std::size_t>()];
                    chain.push_back(json::array({m.first, m.second}));
                }
                r["certificate"] = json{{"order", d.certificate["order"]}, {"chain", chain}};
                if (replay)
                    r["replayed"] = formal_reals().verify(target, Subset<Interval>::of(u), json{{"chain", chain}}, 0);
            } else {
                r["witness"] = *d.witness;
            }
            return r;
        };
    } else if (p.kind == "ball-cover" || p.kind == "pf-cover") {
        const Gus g = space_ref(ctx, field(q, "space", path), path + "/space");
        const Ball a = ball_in(g, field(q, "a", path), path + "/a");
        const std::vector<Ball> u = balls_in(g, field(q, "u", path), path + "/u");
        const bool pf = p.kind == "pf-cover";
        p.execute = [g, a, u, budget, pf, path](bool replay) {
            const Subset<Ball> us = Subset<Ball>::of(u);
            CoverJudgment<Ball> j;
            try {
                if (pf) {
                    j = pf_cover_check(g, a, us, budget);
                } else if (g.oracle && g.oracle->locally_compact()) {
                    j = semidecide_lc_cover(g, a, us, budget);
                } else {
                    j = cover_check(completion_topology(g).topology, a, us, budget);
                }
            } catch (const OracleMissing& e) {
                throw JobError("OracleMissing", path, e.what());
            }
            json r = judgment_record(j);
            if (pf) r["tag"] = "pf";
            if (replay && j.trace) {
                const FormalTopology<Ball> t = pf ? uniform_topology(g).topology : completion_topology(g).topology;
                bool ok = replay_ok(t, *j.trace, us, budget);
                if (!pf && j.trace->rule == Rule::Plugin) ok = ok && verify_lc_certificate(g, a, us, j.trace->certificate);
                r["replayed"] = ok;
            }
            return r;
        };
    } else if (p.kind == "subcover") {
        const Gus g = space_ref(ctx, field(q, "space", path), path + "/space");
        const std::vector<Ball> u = balls_in(g, field(q, "u", path), path + "/u");
        p.execute = [g, u, budget, path](bool replay) {
            SubcoverResult s;
            try {
                s = finite_subcover(g, Subset<Ball>::of(u), budget);
            } catch (const OracleMissing& e) {
                throw JobError("OracleMissing", path, e.what());
            } catch (const NotTotallyBounded& e) {
                throw JobError("OracleMissing", path, e.what());
            }
            json r{{"verdict", to_string(s.verdict)}};
            if (s.verdict == Verdict::Proved) {
                json u0 = json::array();
                for (const Ball& b : s.u0) u0.push_back(b);
                r["u0"] = std::move(u0);
                r["certificate"] = s.certificate;
                if (replay) {
                    bool ok = true;
                    for (const auto& n : s.certificate["net"])
                        ok = ok && g.oracle->verify_cover(g, n["ball"].get<Ball>(), s.u0, n["cover"]);
                    r["replayed"] = ok;
                }
            }
            if (s.witness) r["witness"] = witness_json(s.witness);
            return r;
        };
    } else if (p.kind == "dist") {
        const PointApprox& a = point_ref(ctx, field(q, "a", path), path + "/a");
        const PointApprox& b = point_ref(ctx, field(q, "b", path), path + "/b");
        if (a.space.name != b.space.name) parse_fail(path, "points live in different spaces");
        const unsigned n = static_cast<unsigned>(q.contains("n") ? natural_at(q["n"], path + "/n") : budget);
        MetricId d = a.space.full_metric();
        if (q.contains("metric")) d = metric_in(a.space, q["metric"], path + "/metric");
        p.execute = [a, b, d, n](bool) {
            json table = json::array();
            Rational up, lo(0);
            for (unsigned k = 0; k <= n; ++k) {
                const Rational u = dist_upper(a, b, d, k), l = dist_lower(a, b, d, k);
                if (k == 0 || u < up) up = u;
                lo = max(lo, l);
                table.push_back(json{{"n", k}, {"upper", up}, {"lower", lo}});
            }
            return json{{"verdict", "Proved"}, {"note", "bounds on d̃"}, {"bounds", std::move(table)},
                        {"upper_decimal", up.to_double()}};
        };
    } else if (p.kind == "member") {
        const PointApprox& a = point_ref(ctx, field(q, "point", path), path + "/point");
        const Ball b = ball_in(a.space, field(q, "ball", path), path + "/ball");
        p.execute = [a, b, budget](bool) {
            const Judgment j = member(a, b, budget);
            return json{{"verdict", to_string(j.verdict)}, {"note", j.note}, {"evidence", j.evidence}};
        };
    } else if (p.kind == "prec") {
        const Gus g = space_ref(ctx, field(q, "space", path), path + "/space");
        const Ball a = ball_in(g, field(q, "a", path), path + "/a");
        const Ball b = ball_in(g, field(q, "b", path), path + "/b");
        p.execute = [g, a, b, budget, path](bool) {
            try {
                const Judgment j = prec(g, a, b, budget);
                return json{{"verdict", to_string(j.verdict)}, {"note", j.note}, {"evidence", j.evidence}, {"tag", "pf"}};
            } catch (const OracleMissing& e) {
                throw JobError("OracleMissing", path, e.what());
            }
        };
    } else {
        parse_fail(path + "/kind", "unknown query kind '" + p.kind + "'");
    }
    return p;
}

int exit_for(const std::string& verdict) {
    if (verdict == "Proved") return 0;
    if (verdict == "Refuted") return 1;
    return 2;
}

}  // namespace

std::vector<Diagnostic> validate_job(const json& doc) {
    std::vector<Diagnostic> diags;
    if (!doc.is_object()) return {{"", "document must be an object"}};
    Context ctx;
    try {
        ctx = build_context(doc, &diags);
    } catch (const JobError& e) {
        diags.push_back({e.path, e.what()});
        return diags;
    }
    if (!doc.contains("queries") || !doc["queries"].is_array()) {
        diags.push_back({"/queries", "expected a list of queries"});
        return diags;
    }
    for (std::size_t i = 0; i < doc["queries"].size(); ++i) {
        const std::string path = "/queries/" + std::to_string(i);
        try {
            prepare(ctx, doc["queries"][i], path, 0);
        } catch (const JobError& e) {
            diags.push_back({e.path, e.what()});
        } catch (const std::exception& e) {
            diags.push_back({path, e.what()});
        }
    }
    return diags;
}

Report run_job(const json& doc, const RunOptions& opts) {
    Report rep;
    const std::vector<Diagnostic> diags = validate_job(doc);
    if (!diags.empty()) {
        for (const Diagnostic& d : diags) rep.records.push_back(json{{"error", "invalid document"}, {"path", d.path}, {"message", d.message}});
        rep.exit_code = 3;
        return rep;
    }
    const Context ctx = build_context(doc, nullptr);
    const json& qs = doc["queries"];
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const std::string path = "/queries/" + std::to_string(i);
        json rec{{"index", i}, {"kind", qs[i]["kind"]}};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Prepared p = prepare(ctx, qs[i], path, opts.default_budget);
            rec["budget"] = p.budget;
            const json result = p.execute(opts.replay);
            for (const auto& [k, v] : result.items()) rec[k] = v;
            int code = exit_for(rec["verdict"].get<std::string>());
            if (rec.contains("replayed") && !rec["replayed"].get<bool>()) code = 3;
            rep.exit_code = std::max(rep.exit_code, code);
        } catch (const JobError& e) {
            rec["error"] = e.kind;
            rec["path"] = e.path;
            rec["message"] = e.what();
            rep.exit_code = 3;
        } catch (const std::exception& e) {
            rec["error"] = "Failure";
            rec["path"] = path;
            rec["message"] = e.what();
            rep.exit_code = 3;
        }
        rec["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

json strip_timing(const json& records) {
    json out = records;
    for (auto& r : out)
        if (r.is_object()) r.erase("wall_ms");
    return out;
}

std::string format_text(const Report& r) {
    std::ostringstream os;
    for (const json& rec : r.records) {
        if (rec.contains("error")) {
            os << "error " << rec["path"].get<std::string>() << ": " << rec["message"].get<std::string>() << "\n";
            continue;
        }
        os << "[" << rec["index"].get<std::size_t>() << "] " << rec["kind"].get<std::string>();
        if (rec.contains("tag")) os << " (" << rec["tag"].get<std::string>() << ")";
        os << ": " << rec["verdict"].get<std::string>();
        if (rec.contains("note") && !rec["note"].get<std::string>().empty()) os << " - " << rec["note"].get<std::string>();
        os << "\n";
        if (rec.contains("witness")) os << "    witness " << rec["witness"].dump() << "\n";
        if (rec.contains("certificate")) os << "    certificate " << rec["certificate"].dump() << "\n";
        if (rec.contains("replayed")) os << "    replayed " << (rec["replayed"].get<bool>() ? "yes" : "NO") << "\n";
        if (rec.contains("bounds"))
            for (const json& b : rec["bounds"])
                os << "    n=" << b["n"].get<unsigned>() << "  upper " << std::setprecision(10)
                   << b["upper"].get<Rational>().to_double() << "  lower " << b["lower"].get<Rational>().to_double() << "\n";
    }
    return os.str();
}

}  // namespace lcomp
