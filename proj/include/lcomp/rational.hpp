// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lcomp {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact fraction in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long n, long d);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Rational(const mpz_class& z) : v_(z) {}

    // Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view text);
    // 2^k for any integer k.
    static Rational pow2(long k);

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    mpz_class floor() const;
    mpz_class ceil() const;
    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

private:
    mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Midpoint of a and b.
inline Rational mid(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

std::size_t hash_value(const Rational& q);

// Rational enclosure [lo, hi] of sqrt(s), s >= 0, with hi - lo <= 2^-n.
// Exact (lo == hi) when s is the square of a rational.
struct SqrtEnclosure {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};
SqrtEnclosure sqrt_enclosure(const Rational& s, unsigned n);

// Exact square root if s is a perfect rational square.
bool exact_sqrt(const Rational& s, Rational& out);

// Serialized as "p/q" (or "p" for integers).
template <class J>
void to_json(J& j, const Rational& q) {
    j = q.str();
}
template <class J>
void from_json(const J& j, Rational& q) {
    if (j.is_number_integer()) {
        q = Rational(j.template get<long>());
        return;
    }
    q = Rational::parse(j.template get<std::string>());
}

}  // namespace lcomp

template <>
struct std::hash<lcomp::Rational> {
    std::size_t operator()(const lcomp::Rational& q) const { return lcomp::hash_value(q); }
};
