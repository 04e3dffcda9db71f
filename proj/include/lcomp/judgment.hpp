// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

namespace lcomp {

using json = nlohmann::ordered_json;

enum class Verdict { Proved, Refuted, Unknown };

// Three-valued answer with the evidence that justifies it.
struct Judgment {
    Verdict verdict = Verdict::Unknown;
    std::string note;
    json evidence = json::object();
    std::size_t budget_spent = 0;

    static Judgment proved(std::string note = {}, json ev = json::object()) {
        return {Verdict::Proved, std::move(note), std::move(ev), 0};
    }
    static Judgment refuted(std::string note = {}, json ev = json::object()) {
        return {Verdict::Refuted, std::move(note), std::move(ev), 0};
    }
    static Judgment unknown(std::string note = {}, std::size_t spent = 0) {
        return {Verdict::Unknown, std::move(note), json::object(), spent};
    }

    bool is_proved() const { return verdict == Verdict::Proved; }
    bool is_refuted() const { return verdict == Verdict::Refuted; }
    bool is_unknown() const { return verdict == Verdict::Unknown; }
};

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Proved: return "Proved";
        case Verdict::Refuted: return "Refuted";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

// Conjunction: Refuted dominates, then Unknown.
inline Verdict both(Verdict a, Verdict b) {
    if (a == Verdict::Refuted || b == Verdict::Refuted) return Verdict::Refuted;
    if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
    return Verdict::Proved;
}

// Swaps Proved and Refuted.
inline Verdict negate(Verdict v) {
    if (v == Verdict::Proved) return Verdict::Refuted;
    if (v == Verdict::Refuted) return Verdict::Proved;
    return Verdict::Unknown;
}

}  // namespace lcomp
