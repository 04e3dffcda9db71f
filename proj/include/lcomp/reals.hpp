// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/judgment.hpp"
#include "lcomp/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace lcomp {

// A rational or one of the two infinities.
class Bound {
public:
    enum class Kind { NegInf, Finite, PosInf };

    Bound() = default;
    Bound(const Rational& q) : kind_(Kind::Finite), value_(q) {}
    Bound(long n) : kind_(Kind::Finite), value_(n) {}
    static Bound pos_inf() { return Bound(Kind::PosInf); }
    static Bound neg_inf() { return Bound(Kind::NegInf); }

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    // Precondition: finite().
    const Rational& value() const;

    std::string str() const;

    friend bool operator==(const Bound& a, const Bound& b);
    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);
    // Infinity absorbs; (+inf) + (-inf) is rejected.
    friend Bound operator+(const Bound& a, const Bound& b);
    friend Bound operator-(const Bound& a, const Rational& b);

private:
    explicit Bound(Kind k) : kind_(k) {}
    Kind kind_ = Kind::Finite;
    Rational value_;
};

inline const Bound& min(const Bound& a, const Bound& b) { return b < a ? b : a; }
inline const Bound& max(const Bound& a, const Bound& b) { return a < b ? b : a; }

// Upper real given by a nonincreasing sequence of rational upper bounds.
// The value is the infimum of the queries.
class UpperRealApprox {
public:
    using Query = std::function<Bound(unsigned)>;

    // Wraps raw bounds in a running minimum.
    static UpperRealApprox from_query(Query raw);
    static UpperRealApprox constant(const Rational& q);
    static UpperRealApprox infinite();

    Bound query(unsigned n) const { return (*q_)(n); }
    // Set when the query is constant, i.e. the value is known exactly.
    const std::optional<Bound>& exact_value() const { return exact_; }

private:
    friend UpperRealApprox ur_add(const UpperRealApprox&, const UpperRealApprox&);
    friend UpperRealApprox ur_sup(const UpperRealApprox&, const UpperRealApprox&);
    UpperRealApprox(std::shared_ptr<const Query> q, std::optional<Bound> exact)
        : q_(std::move(q)), exact_(std::move(exact)) {}

    std::shared_ptr<const Query> q_;
    std::optional<Bound> exact_;
};

UpperRealApprox ur_add(const UpperRealApprox& u, const UpperRealApprox& v);
UpperRealApprox ur_sup(const UpperRealApprox& u, const UpperRealApprox& v);

// Proved when some query(n), n <= budget, is below q. Refuted only for
// exact approximants.
Judgment ur_lt(const UpperRealApprox& u, const Rational& q, unsigned budget);

// Possibly non-finite real: lower bounds may be -inf, upper bounds +inf.
class DedekindRealApprox {
public:
    using Query = std::function<Bound(unsigned)>;

    // Wraps raw bounds in running max / running min.
    static DedekindRealApprox from_queries(Query lower, Query upper);
    static DedekindRealApprox constant(const Rational& q);
    // sqrt(s) for rational s >= 0, with width 2^-n at index n.
    static DedekindRealApprox sqrt(const Rational& s);

    Bound lower(unsigned n) const { return (*lo_)(n); }
    Bound upper(unsigned n) const { return (*hi_)(n); }

    // Drops the lower cut; the upper cut is unchanged.
    UpperRealApprox forget_lower() const;

private:
    DedekindRealApprox(std::shared_ptr<const Query> lo, std::shared_ptr<const Query> hi)
        : lo_(std::move(lo)), hi_(std::move(hi)) {}
    std::shared_ptr<const Query> lo_;
    std::shared_ptr<const Query> hi_;
};

// Two-sided strict comparison x < q.
Judgment dr_lt(const DedekindRealApprox& x, const Rational& q, unsigned budget);

enum class Comparison { Less, Greater, Within, Unknown };
std::string_view to_string(Comparison c);

Comparison dr_compare(const DedekindRealApprox& x, const DedekindRealApprox& y,
                      const Rational& tol, unsigned budget);

}  // namespace lcomp
