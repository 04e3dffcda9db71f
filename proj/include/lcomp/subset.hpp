// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/judgment.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <vector>

namespace lcomp {

// A subset of some base, given by decidable membership plus an enumeration
// of (a prefix of) its members. Finite subsets enumerate completely.
template <class E>
struct Subset {
    std::function<bool(const E&)> contains;
    std::function<std::vector<E>(std::size_t budget)> enumerate;
    bool finite = false;
    // Optional: members that matter when covering a given element.
    std::function<std::vector<E>(const E& anchor, std::size_t budget)> near;
    // Symbolic description of a known family, so deciders can reason about
    // it without enumerating. Null when absent.
    json tag;

    static Subset of(std::vector<E> xs) {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        auto shared = std::make_shared<const std::vector<E>>(std::move(xs));
        Subset s;
        s.contains = [shared](const E& e) { return std::binary_search(shared->begin(), shared->end(), e); };
        s.enumerate = [shared](std::size_t) { return *shared; };
        s.finite = true;
        return s;
    }

    static Subset empty() { return of({}); }

    // Membership only; enumeration comes from `members` when given.
    static Subset where(std::function<bool(const E&)> pred,
                        std::function<std::vector<E>(std::size_t)> members = nullptr) {
        Subset s;
        s.contains = std::move(pred);
        if (members) {
            s.enumerate = std::move(members);
        } else {
            s.enumerate = [](std::size_t) { return std::vector<E>{}; };
        }
        return s;
    }

    std::vector<E> members(std::size_t budget) const { return enumerate ? enumerate(budget) : std::vector<E>{}; }

    std::vector<E> candidates_near(const E& anchor, std::size_t budget) const {
        return near ? near(anchor, budget) : members(budget);
    }
};

template <class E>
Subset<E> intersect(const Subset<E>& a, const Subset<E>& b) {
    Subset<E> s;
    s.contains = [a, b](const E& e) { return a.contains(e) && b.contains(e); };
    const Subset<E>& smaller = a.finite ? a : b;
    s.enumerate = [smaller, a, b](std::size_t k) {
        std::vector<E> out;
        for (const E& e : smaller.members(k))
            if (a.contains(e) && b.contains(e)) out.push_back(e);
        return out;
    };
    s.finite = a.finite || b.finite;
    return s;
}

template <class E>
Subset<E> unite(const Subset<E>& a, const Subset<E>& b) {
    Subset<E> s;
    s.contains = [a, b](const E& e) { return a.contains(e) || b.contains(e); };
    s.enumerate = [a, b](std::size_t k) {
        std::vector<E> out = a.members(k);
        for (const E& e : b.members(k))
            if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
        return out;
    };
    s.finite = a.finite && b.finite;
    if (a.near || b.near) {
        s.near = [a, b](const E& anchor, std::size_t k) {
            std::vector<E> out = a.candidates_near(anchor, k);
            for (const E& e : b.candidates_near(anchor, k))
                if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
            return out;
        };
    }
    return s;
}

}  // namespace lcomp
