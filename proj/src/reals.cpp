// SPDX-License-Identifier: Apache-2.0
#include "lcomp/reals.hpp"

#include <stdexcept>

namespace lcomp {

const Rational& Bound::value() const {
    if (!finite()) throw std::logic_error("value of an infinite bound");
    return value_;
}

std::string Bound::str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return value_.str();
}

bool operator==(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) return false;
    return !a.finite() || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (!a.finite()) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
}

Bound operator+(const Bound& a, const Bound& b) {
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
        throw std::domain_error("inf - inf");
    if (!a.finite()) return a;
    if (!b.finite()) return b;
    return Bound(a.value_ + b.value_);
}

Bound operator-(const Bound& a, const Rational& b) {
    if (!a.finite()) return a;
    return Bound(a.value_ - b);
}

UpperRealApprox UpperRealApprox::from_query(Query raw) {
    auto wrapped = std::make_shared<const Query>([raw = std::move(raw)](unsigned n) {
        Bound best = raw(0);
        for (unsigned k = 1; k <= n; ++k) best = min(best, raw(k));
        return best;
    });
    return UpperRealApprox(std::move(wrapped), std::nullopt);
}

UpperRealApprox UpperRealApprox::constant(const Rational& q) {
    return UpperRealApprox(std::make_shared<const Query>([q](unsigned) { return Bound(q); }), Bound(q));
}

UpperRealApprox UpperRealApprox::infinite() {
    return UpperRealApprox(std::make_shared<const Query>([](unsigned) { return Bound::pos_inf(); }),
                           Bound::pos_inf());
}

UpperRealApprox ur_add(const UpperRealApprox& u, const UpperRealApprox& v) {
    std::optional<Bound> exact;
    if (u.exact_ && v.exact_) exact = *u.exact_ + *v.exact_;
    auto q = std::make_shared<const UpperRealApprox::Query>(
        [a = u.q_, b = v.q_](unsigned n) { return (*a)(n) + (*b)(n); });
    return UpperRealApprox(std::move(q), std::move(exact));
}

UpperRealApprox ur_sup(const UpperRealApprox& u, const UpperRealApprox& v) {
    std::optional<Bound> exact;
    if (u.exact_ && v.exact_) exact = max(*u.exact_, *v.exact_);
    auto q = std::make_shared<const UpperRealApprox::Query>(
        [a = u.q_, b = v.q_](unsigned n) { return max((*a)(n), (*b)(n)); });
    return UpperRealApprox(std::move(q), std::move(exact));
}

Judgment ur_lt(const UpperRealApprox& u, const Rational& q, unsigned budget) {
    if (const auto& e = u.exact_value()) {
        if (*e < Bound(q)) return Judgment::proved("exact value below bound", {{"value", e->str()}});
        return Judgment::refuted("exact value not below bound", {{"value", e->str()}});
    }
    for (unsigned n = 0; n <= budget; ++n) {
        const Bound b = u.query(n);
        if (b < Bound(q)) {
            Judgment j = Judgment::proved("upper bound below q", {{"index", n}, {"bound", b.str()}});
            j.budget_spent = n;
            return j;
        }
    }
    return Judgment::unknown("no upper bound below q within budget", budget);
}

DedekindRealApprox DedekindRealApprox::from_queries(Query lower, Query upper) {
    auto lo = std::make_shared<const Query>([raw = std::move(lower)](unsigned n) {
        Bound best = raw(0);
        for (unsigned k = 1; k <= n; ++k) best = max(best, raw(k));
        return best;
    });
    auto hi = std::make_shared<const Query>([raw = std::move(upper)](unsigned n) {
        Bound best = raw(0);
        for (unsigned k = 1; k <= n; ++k) best = min(best, raw(k));
        return best;
    });
    return DedekindRealApprox(std::move(lo), std::move(hi));
}

DedekindRealApprox DedekindRealApprox::constant(const Rational& q) {
    auto f = std::make_shared<const Query>([q](unsigned) { return Bound(q); });
    return DedekindRealApprox(f, f);
}

DedekindRealApprox DedekindRealApprox::sqrt(const Rational& s) {
    if (s.sign() < 0) throw std::domain_error("sqrt of negative rational");
    auto lo = std::make_shared<const Query>([s](unsigned n) { return Bound(sqrt_enclosure(s, n).lo); });
    auto hi = std::make_shared<const Query>([s](unsigned n) { return Bound(sqrt_enclosure(s, n).hi); });
    return DedekindRealApprox(std::move(lo), std::move(hi));
}

UpperRealApprox DedekindRealApprox::forget_lower() const {
    return UpperRealApprox::from_query(*hi_);
}

Judgment dr_lt(const DedekindRealApprox& x, const Rational& q, unsigned budget) {
    for (unsigned n = 0; n <= budget; ++n) {
        if (x.upper(n) < Bound(q)) {
            Judgment j = Judgment::proved("upper bound below q", {{"index", n}, {"upper", x.upper(n).str()}});
            j.budget_spent = n;
            return j;
        }
        if (x.lower(n) >= Bound(q)) {
            Judgment j = Judgment::refuted("lower bound at or above q", {{"index", n}, {"lower", x.lower(n).str()}});
            j.budget_spent = n;
            return j;
        }
    }
    return Judgment::unknown("bounds straddle q", budget);
}

std::string_view to_string(Comparison c) {
    switch (c) {
        case Comparison::Less: return "Less";
        case Comparison::Greater: return "Greater";
        case Comparison::Within: return "Within";
        case Comparison::Unknown: return "Unknown";
    }
    return "Unknown";
}

Comparison dr_compare(const DedekindRealApprox& x, const DedekindRealApprox& y,
                      const Rational& tol, unsigned budget) {
    if (tol.sign() <= 0) throw std::invalid_argument("tolerance must be positive");
    for (unsigned n = 0; n <= budget; ++n) {
        const Bound xl = x.lower(n), xu = x.upper(n), yl = y.lower(n), yu = y.upper(n);
        if (xu < yl) return Comparison::Less;
        if (yu < xl) return Comparison::Greater;
        if (xu.finite() && xl.finite() && yu.finite() && yl.finite()) {
            const Rational spread = max(xu.value() - yl.value(), yu.value() - xl.value());
            if (spread <= tol) return Comparison::Within;
        }
    }
    return Comparison::Unknown;
}

}  // namespace lcomp
