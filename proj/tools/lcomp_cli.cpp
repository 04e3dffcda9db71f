// SPDX-License-Identifier: Apache-2.0
// Batch front end: reads a job document, runs its queries, writes a report.
#include "lcomp/job.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Run cover, point and distance queries from a job document."};
    std::string job_path, report_path, format = "text";
    std::optional<std::size_t> budget;
    bool replay = false, validate_only = false;
    app.add_option("--job", job_path, "job document (JSON)")->required();
    app.add_option("--budget-default", budget, "budget for queries without one (env LCOMP_BUDGET)");
    app.add_option("--report", report_path, "write the report here instead of stdout");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--replay-certificates", replay, "replay every certificate through the verifiers");
    app.add_flag("--validate", validate_only, "check the document without running queries");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 3;
    }

    lcomp::RunOptions opts;
    if (const char* env = std::getenv("LCOMP_BUDGET")) {
        try {
            opts.default_budget = std::stoul(env);
        } catch (const std::exception&) {
            std::cerr << "LCOMP_BUDGET is not a natural number: " << env << "\n";
            return 3;
        }
    }
    if (budget) opts.default_budget = *budget;
    opts.replay = replay;

    std::ifstream in(job_path);
    if (!in) {
        std::cerr << "cannot read " << job_path << "\n";
        return 3;
    }
    lcomp::json doc;
    try {
        doc = lcomp::json::parse(in);
    } catch (const lcomp::json::parse_error& e) {
        std::cerr << "ParseError in " << job_path << ": " << e.what() << "\n";
        return 3;
    }

    if (validate_only) {
        const auto diags = lcomp::validate_job(doc);
        for (const auto& d : diags) std::cout << d.path << ": " << d.message << "\n";
        return diags.empty() ? 0 : 3;
    }

    const lcomp::Report rep = lcomp::run_job(doc, opts);
    const std::string out = format == "structured" ? lcomp::json{{"queries", rep.records}, {"exit_code", rep.exit_code}}.dump(2) + "\n"
                                                   : lcomp::format_text(rep);
    if (report_path.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(report_path);
        if (!f) {
            std::cerr << "cannot write " << report_path << "\n";
            return 3;
        }
        f << out;
    }
    return rep.exit_code;
}
