#include "weylbott/report.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <sstream>

namespace weylbott {

using ordered_json = nlohmann::ordered_json;

std::string report_json(const LedgerRun& run) {
    ordered_json j;
    j["schema"] = "weylbott/report/v1";
    j["ledger"] = run.name;
    j["group"] = std::string(1, run.group_type) + std::to_string(run.group_rank);
    j["node"] = run.node;

    ordered_json summary;
    summary["checks"] = run.checks.size();
    summary["passed"] = run.passed_count();
    summary["failed"] = long(run.checks.size()) - run.passed_count();
    summary["all_pass"] = run.all_pass();
    ordered_json obligations;
    obligations["total"] = run.obligations_total;
    obligations["distinct"] = run.obligations_distinct;
    obligations["proven"] = run.obligations_proven;
    ordered_json by_rule;
    for (const auto& [rule, n] : run.obligations_by_rule) by_rule[rule] = n;
    obligations["by_rule"] = by_rule;
    summary["obligations"] = obligations;
    j["summary"] = summary;

    ordered_json sections = ordered_json::array();
    std::string current;
    ordered_json* sec = nullptr;
    for (const auto& c : run.checks) {
        if (c.section != current || !sec) {
            sections.push_back(ordered_json{{"name", c.section}, {"checks", ordered_json::array()}});
            sec = &sections.back();
            current = c.section;
        }
        ordered_json row;
        row["id"] = c.id;
        row["kind"] = c.kind;
        row["paper_anchor"] = c.anchor;
        row["status"] = c.pass ? "pass" : "fail";
        if (!c.verdict.empty()) row["verdict"] = c.verdict;
        row["detail"] = c.detail;
        (*sec)["checks"].push_back(std::move(row));
    }
    j["sections"] = sections;
    return j.dump(2) + "\n";
}

std::string report_table(const LedgerRun& run) {
    std::ostringstream os;
    os << "ledger " << run.name << "  (" << run.group_type << run.group_rank << "/P" << run.node
       << ")\n";
    std::string section;
    std::size_t idw = 0;
    for (const auto& c : run.checks) idw = std::max(idw, c.id.size());
    for (const auto& c : run.checks) {
        if (c.section != section) {
            section = c.section;
            os << "\n[" << section << "]\n";
        }
        os << "  " << (c.pass ? "pass" : "FAIL") << "  " << std::left << std::setw(int(idw))
           << c.id << "  ";
        if (!c.verdict.empty()) os << c.verdict << "  ";
        os << c.detail;
        if (!c.anchor.empty()) os << "  -- " << c.anchor;
        os << "\n";
    }
    os << "\nsummary: " << run.passed_count() << "/" << run.checks.size() << " checks passed";
    if (run.obligations_total > 0) {
        os << "; obligations " << run.obligations_proven << "/" << run.obligations_total
           << " proven (" << run.obligations_distinct << " distinct)";
        os << "; by rule:";
        for (const auto& [rule, n] : run.obligations_by_rule) os << " " << rule << "=" << n;
    }
    os << "\n" << (run.all_pass() ? "ALL CHECKS PASSED" : "FAILURES PRESENT") << "\n";
    return os.str();
}

} // namespace weylbott
