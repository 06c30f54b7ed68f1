#include "weylbott/cli.hpp"
#include "weylbott/report.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace weylbott;

namespace {

std::string ledger_text() {
    std::ifstream f(WEYLBOTT_LEDGER_PATH);
    REQUIRE(f);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

const LedgerRun& bundled_run() {
    static LedgerRun run = run_ledger_file(WEYLBOTT_LEDGER_PATH);
    return run;
}

const CheckResult* find_check(const LedgerRun& run, const std::string& id) {
    for (const auto& c : run.checks)
        if (c.id == id) return &c;
    return nullptr;
}

int cli(std::initializer_list<const char*> args, std::string* out_text = nullptr) {
    std::vector<const char*> argv{"weylbott"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    int code = run_cli(int(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    return code;
}

} // namespace

TEST_CASE("the bundled ledger replays clean") {
    const LedgerRun& run = bundled_run();
    CHECK(run.all_pass());
    CHECK(run.obligations_total == 300);
    CHECK(run.obligations_proven == 300);
    CHECK(run.obligations_distinct == 69);
    CHECK(run.group_type == 'F');
    CHECK(run.node == 1);

    // every rule the ledger names is exercised
    for (const std::string rule : {"direct", "eval", "monad", "mutation", "serre"})
        CHECK(run.obligations_by_rule.count(rule) == 1);

    const CheckResult* summary = find_check(run, "lefschetz_verified");
    REQUIRE(summary);
    CHECK(summary->pass);
}

TEST_CASE("adding a harmless relation keeps every verdict proven") {
    std::string text = ledger_text();
    const std::string marker = "run_collection lefschetz";
    auto pos = text.find(marker);
    REQUIRE(pos != std::string::npos);
    text.insert(pos, "relation split_example ses terms O -> O + O(1) -> O(1) "
                     "anchor \"split extension, monotonicity probe\"\n");
    LedgerRun run = run_ledger_text(text, "modified");
    CHECK(run.all_pass());
    CHECK(run.obligations_proven == 300);
}

TEST_CASE("ledger grammar errors carry line numbers") {
    CHECK_THROWS_WITH_AS(run_ledger_text("group F 4 node 1\nfrobnicate x\n", "t"),
                         doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_AS(run_ledger_text("section nothing\n", "t"), std::invalid_argument);
    CHECK_THROWS_AS(
        run_ledger_text("group F 4 node 1\nclosure_use missing_rel twists 0..1\n", "t"),
        std::invalid_argument);
}

TEST_CASE("a tampered expectation fails instead of passing silently") {
    std::string text = ledger_text();
    const std::string good = "check bwb_u2_m2 bwb U[1,0,0](-2) expect k[-1]";
    const std::string bad = "check bwb_u2_m2 bwb U[1,0,0](-2) expect k[0]";
    auto pos = text.find(good);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, good.size(), bad);
    LedgerRun run = run_ledger_text(text, "tampered");
    CHECK_FALSE(run.all_pass());
    const CheckResult* c = find_check(run, "bwb_u2_m2");
    REQUIRE(c);
    CHECK_FALSE(c->pass);
}

TEST_CASE("reports are byte-identical across runs") {
    LedgerRun a = run_ledger_file(WEYLBOTT_LEDGER_PATH);
    LedgerRun b = run_ledger_file(WEYLBOTT_LEDGER_PATH);
    CHECK(report_json(a) == report_json(b));
    CHECK(report_table(a) == report_table(b));
    CHECK(report_json(a).find("\"paper_anchor\"") != std::string::npos);

    // an empty run still renders as a valid document
    LedgerRun empty;
    std::string doc = report_json(empty);
    CHECK(doc.find("\"checks\": 0") != std::string::npos);
    CHECK(doc.back() == '\n');
}

TEST_CASE("command line surface") {
    std::string out;

    SUBCASE("tensor lists the decomposition in the bundle grammar") {
        CHECK(cli({"tensor", "--type", "F4", "--node", "1", "--a", "0,0,0,1", "--b", "0,0,0,1"},
                  &out) == 0);
        CHECK(out == "U[0,0,2] + U[0,1,0] + O(1)\n");
    }

    SUBCASE("bwb places the trivial representation in degree one") {
        CHECK(cli({"bwb", "--type", "F4", "--node", "1", "--hw", "-2,1,0,0"}, &out) == 0);
        CHECK(out.find("k[-1]") != std::string::npos);
    }

    SUBCASE("dominantize returns dominant input unchanged") {
        CHECK(cli({"dominantize", "--type", "F4", "--hw", "0,0,0,0"}, &out) == 0);
        CHECK(out.find("length = 0") != std::string::npos);
    }

    SUBCASE("usage errors exit with status 2") {
        CHECK(cli({}) == 2);
        CHECK(cli({"tensor", "--type", "F4", "--node", "1", "--a", "1,2"}) == 2);
        CHECK(cli({"bwb", "--type", "F4", "--hw", "0,0,0,0"}) == 2); // missing --node
        CHECK(cli({"verify-paper", "--ledger", "/nonexistent/path.ledger"}) == 2);
    }

    SUBCASE("verification failures exit with status 1") {
        std::string text = ledger_text();
        const std::string good = "check rank_u4 rank U[0,0,1] expect 6";
        const std::string bad = "check rank_u4 rank U[0,0,1] expect 7";
        auto pos = text.find(good);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, good.size(), bad);
        std::string tmp = "/tmp/weylbott_tampered.ledger";
        {
            std::ofstream f(tmp);
            f << text;
        }
        CHECK(cli({"verify-paper", "--ledger", tmp.c_str()}) == 1);
        std::remove(tmp.c_str());
    }

    SUBCASE("json output is stable") {
        std::string a, b;
        CHECK(cli({"scan-acyclic", "--type", "F4", "--node", "1", "--hw", "0,1,0,0", "--range",
                   "-10..-1", "--format", "json"},
                  &a) == 0);
        CHECK(cli({"scan-acyclic", "--type", "F4", "--node", "1", "--hw", "0,1,0,0", "--range",
                   "-10..-1", "--format", "json"},
                  &b) == 0);
        CHECK(a == b);
        CHECK(a.find("\"acyclic\": false") != std::string::npos);
    }
}
