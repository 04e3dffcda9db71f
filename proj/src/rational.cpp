// SPDX-License-Identifier: Apache-2.0
#include "lcomp/rational.hpp"

#include <cctype>
#include <ostream>

namespace lcomp {

Rational::Rational(long n, long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

static bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    if (neg) n = -n;
    return Rational(mpq_class(n, d));
}

Rational Rational::pow2(long k) {
    mpz_class p = 1;
    if (k >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
        return Rational(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    return Rational(mpq_class(mpz_class(1), p));
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

mpz_class Rational::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

std::size_t hash_value(const Rational& q) {
    const std::size_t a = mpz_get_ui(q.raw().get_num_mpz_t());
    const std::size_t b = mpz_get_ui(q.raw().get_den_mpz_t());
    const std::size_t s = static_cast<std::size_t>(q.sign() + 1);
    return (a * 1000003u) ^ (b * 2654435761u) ^ s;
}

bool exact_sqrt(const Rational& s, Rational& out) {
    if (s.sign() < 0) return false;
    const mpz_class& p = s.raw().get_num();
    const mpz_class& q = s.raw().get_den();
    if (!mpz_perfect_square_p(p.get_mpz_t()) || !mpz_perfect_square_p(q.get_mpz_t())) return false;
    mpz_class rp, rq;
    mpz_sqrt(rp.get_mpz_t(), p.get_mpz_t());
    mpz_sqrt(rq.get_mpz_t(), q.get_mpz_t());
    out = Rational(mpq_class(rp, rq));
    return true;
}

SqrtEnclosure sqrt_enclosure(const Rational& s, unsigned n) {
    if (s.sign() < 0) throw std::domain_error("sqrt of negative rational");
    Rational r;
    if (exact_sqrt(s, r)) return {r, r};
    // sqrt(p/q) = sqrt(p q) / q; scale by 2^n before taking the integer root.
    const mpz_class& p = s.raw().get_num();
    const mpz_class& q = s.raw().get_den();
    mpz_class scaled = p * q;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * static_cast<mp_bitcnt_t>(n));
    mpz_class k;
    mpz_sqrt(k.get_mpz_t(), scaled.get_mpz_t());
    mpz_class den = q;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), n);
    return {Rational(mpq_class(k, den)), Rational(mpq_class(k + 1, den))};
}

}  // namespace lcomp
