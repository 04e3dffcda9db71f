// SPDX-License-Identifier: Apache-2.0
// Independent reference computations for the test suites. Nothing here calls
// into the library's deciders; only the value types are shared.
#pragma once

#include "lcomp/rational.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace lcomp::testing {

inline Rational R(long n, long d = 1) { return Rational(n, d); }

// [lo, hi] ∋ √s with hi − lo ≤ 2^-bits, by plain bisection.
inline std::pair<Rational, Rational> sqrt_bisect(const Rational& s, int bits) {
    Rational lo(0), hi = s < Rational(1) ? Rational(1) : s;
    const Rational width = Rational::pow2(-bits);
    while (hi - lo > width) {
        const Rational m = mid(lo, hi);
        if (m * m <= s)
            lo = m;
        else
            hi = m;
    }
    return {lo, hi};
}

// Reflexive-transitive closure of a relation on {0..n-1}.
inline std::vector<std::vector<bool>> closure(std::size_t n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
    for (auto [a, b] : pairs) le[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (le[i][k] && le[k][j]) le[i][j] = true;
    return le;
}

struct MaskAxiom {
    int element;
    std::uint32_t cover;
};

// Least A ⊇ U closed under ≤-left and, per axiom (b, C):
//   localised rule:  C ⊆ A ⇒ b ∈ A
//   general rule:    a ≤ b and a↓C ⊆ A ⇒ a ∈ A
// Iterates whole passes until nothing changes.
inline std::uint32_t naive_saturation(std::size_t n, const std::vector<std::vector<bool>>& le,
                                      const std::vector<MaskAxiom>& axioms, std::uint32_t u, bool localised_rule) {
    std::uint32_t a = u;
    for (bool changed = true; changed;) {
        changed = false;
        std::uint32_t next = a;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (le[x][y] && (a >> y & 1)) next |= 1u << x;
        for (const MaskAxiom& ax : axioms) {
            if (localised_rule) {
                if ((ax.cover & a) == ax.cover) next |= 1u << ax.element;
                continue;
            }
            for (std::size_t x = 0; x < n; ++x) {
                if (!le[x][ax.element]) continue;
                std::uint32_t down = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (!le[c][x]) continue;
                    for (std::size_t m = 0; m < n; ++m)
                        if ((ax.cover >> m & 1) && le[c][m]) down |= 1u << c;
                }
                if ((down & a) == down) next |= 1u << x;
            }
        }
        if (next != a) {
            a = next;
            changed = true;
        }
    }
    return a;
}

// Does the union of open intervals contain the closed interval [lo, hi]?
inline bool open_union_covers(std::vector<std::pair<Rational, Rational>> parts, const Rational& lo,
                              const Rational& hi) {
    Rational cur = lo;
    for (;;) {
        std::optional<Rational> best;
        for (const auto& [l, h] : parts)
            if (l < cur && cur < h && (!best || *best < h)) best = h;
        if (!best) return false;
        if (*best > hi) return true;
        cur = *best;
    }
}

// Uniform rational num/den with den in [1, max_den] and value in [lo, hi].
inline Rational random_rational(std::mt19937& rng, long max_den, long lo, long hi) {
    const long den = std::uniform_int_distribution<long>(1, max_den)(rng);
    const long num = std::uniform_int_distribution<long>(lo * den, hi * den)(rng);
    return Rational(num, den);
}

// Strictly positive variant.
inline Rational random_positive(std::mt19937& rng, long max_den, long hi) {
    const long den = std::uniform_int_distribution<long>(1, max_den)(rng);
    const long num = std::uniform_int_distribution<long>(1, hi * den)(rng);
    return Rational(num, den);
}

}  // namespace lcomp::testing
