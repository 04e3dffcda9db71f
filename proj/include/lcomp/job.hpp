// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lcomp/judgment.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace lcomp {

// A problem at a JSON-pointer location of a job document.
struct JobError : std::runtime_error {
    JobError(std::string kind, std::string path, const std::string& message)
        : std::runtime_error(kind + " at " + path + ": " + message), kind(std::move(kind)), path(std::move(path)) {}
    std::string kind;  // ParseError, UnknownSpace, OracleMissing
    std::string path;
};

struct Diagnostic {
    std::string path;
    std::string message;
};

// Reference and shape check of the whole document; runs no queries.
std::vector<Diagnostic> validate_job(const json& doc);

struct RunOptions {
    std::size_t default_budget = 8;
    bool replay = false;
};

struct Report {
    // One record per query in document order. Timing lives under "wall_ms".
    json records = json::array();
    int exit_code = 0;
};

// Exit code: 0 all Proved, 1 some Refuted, 2 some Unknown, 3 errors.
Report run_job(const json& doc, const RunOptions& opts);

std::string format_text(const Report& r);
// Structured report without timing fields.
json strip_timing(const json& records);

}  // namespace lcomp
