#pragma once

#include "weylbott/deduction.hpp"

namespace weylbott {

struct CheckResult {
    std::string section;
    std::string id;
    std::string kind;
    std::string anchor;
    std::string detail;
    std::string verdict; // obligations carry PROVEN/FAILED/INCONCLUSIVE
    bool pass = true;
};

struct LedgerRun {
    std::string name;
    std::string source;
    char group_type = 0;
    int group_rank = 0;
    int node = 0;
    std::vector<CheckResult> checks;

    long obligations_total = 0;
    long obligations_distinct = 0;
    long obligations_proven = 0;
    std::map<std::string, long> obligations_by_rule;

    bool all_pass() const;
    const CheckResult* first_failure() const;
    long passed_count() const;
};

// Parses and replays a proof ledger. Grammar errors and unknown references
// throw std::invalid_argument with a line number; check failures are
// recorded in the returned run.
LedgerRun run_ledger_text(const std::string& text, const std::string& source_name);
LedgerRun run_ledger_file(const std::string& path);

// Locations tried for the bundled ledger when no --ledger flag is given.
std::vector<std::string> default_ledger_paths();

// Replay traces serialize to JSON with stable key order; a reloaded trace
// re-runs to the same verdict.
std::string trace_json(const ObligationSpec& spec, const ObligationResult& res);

struct LoadedTrace {
    ObligationSpec spec;
    std::string recorded_verdict;
};
LoadedTrace trace_from_json(const ParabolicDatum& p, const std::set<std::string>& formal_names,
                            const std::string& text);

} // namespace weylbott
