// Acceptance suite: replays the bundled ledger and checks each criterion of
// the verification contract, printing one line per criterion.

#include "weylbott/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace weylbott;

namespace {

int failures = 0;

void criterion(int n, const std::string& title, bool pass, const std::string& note = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title;
    if (!note.empty()) std::cout << " [" << note << "]";
    std::cout << "\n";
    if (!pass) ++failures;
}

const CheckResult* row(const LedgerRun& run, const std::string& id) {
    for (const auto& c : run.checks)
        if (c.id == id) return &c;
    return nullptr;
}

bool rows_pass(const LedgerRun& run, std::initializer_list<const char*> ids, std::string& note) {
    for (const char* id : ids) {
        const CheckResult* c = row(run, id);
        if (!c) {
            note = std::string("missing check ") + id;
            return false;
        }
        if (!c->pass) {
            note = std::string(id) + ": " + c->detail;
            return false;
        }
    }
    return true;
}

bool section_pass(const LedgerRun& run, const std::string& section, long expected_count,
                  std::string& note) {
    long n = 0;
    for (const auto& c : run.checks) {
        if (c.section != section) continue;
        ++n;
        if (!c.pass) {
            note = c.id + ": " + c.detail;
            return false;
        }
    }
    if (n != expected_count) {
        note = section + " has " + std::to_string(n) + " checks, expected " +
               std::to_string(expected_count);
        return false;
    }
    return true;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

} // namespace

int main() {
    LedgerRun run;
    try {
        run = run_ledger_file(WEYLBOTT_LEDGER_PATH);
    } catch (const std::exception& e) {
        std::cout << "FAIL criterion 0: ledger replay aborted [" << e.what() << "]\n";
        return 1;
    }

    std::string note;

    // 1. the three cohomology facts, exact
    criterion(1, "cohomology of O, U[1,0,0](-2), U[2,0,0](-3) matches with dim 52",
              rows_pass(run, {"bwb_o", "bwb_u2_m2", "bwb_2u2_m3"}, note), note);

    // 2. all 11 acyclicity families, including non-acyclicity at excluded twists
    note.clear();
    criterion(2, "acyclicity scan reproduces all 11 twist families exactly",
              section_pass(run, "acyclicity", 11, note), note);

    // 3. the printed tensor/exterior/symmetric identities on both routes,
    //    plus 100 random pairs
    note.clear();
    bool c3 = rows_pass(run,
                        {"ten_u4_u4", "ten_u4_u3", "ten_u4_u2", "ten_u2_u3", "ten_u2_u2",
                         "ten_2u4_u4", "ten_2u4_u3", "ten_2u4_u2", "wedge_u4_0", "wedge_u4_1",
                         "wedge_u4_2", "wedge_u4_3", "wedge_u4_4", "wedge_u4_5", "wedge_u4_6",
                         "sym_u4_1", "sym_u4_2", "sym_u4_3", "sym_u4_4", "sym_u4_5", "sym_u4_6",
                         "wedge_u3_2", "wedge_u3_3", "routes_random"},
                        note);
    criterion(3, "tensor and power identities agree on both routes, plus 100 random pairs", c3,
              note);

    // 4. dual twist formula on the full coefficient box
    note.clear();
    criterion(4, "dual bundles carry twist -3a2 - 2a3 - a4 on [0,3]^3",
              rows_pass(run, {"duals"}, note), note);

    // 5. exceptionality of the 24-object collection, with the complete
    //    orthogonality remark in both directions
    note.clear();
    bool c5 = rows_pass(run, {"lefschetz_verified", "orth_u4_tt", "back_tt_u4_0"}, note) &&
              run.obligations_total == 300 && run.obligations_proven == 300;
    criterion(5, "all 300 semiorthogonality/diagonal obligations proven", c5, note);

    // 6. class identities and rank bookkeeping of every registered relation
    note.clear();
    bool c6 = rows_pass(run,
                        {"ses_tangent", "ses_ttilde", "monad_ttilde", "monad_u4", "koszul_u4",
                         "rank_u3", "rank_2u4"},
                        note);
    criterion(6, "relations pass virtual-character validation with rank checks 26-6-6=14, "
                 "53-16-16=21",
              c6, note);

    // 7. machine-rederived complexes equal the printed term lists
    note.clear();
    bool c7 = rows_pass(
        run, {"m46_2", "m46_3", "m46_4", "m46_5", "m46_6", "m46_7", "monad_tt_u4", "monad_tt_u3"},
        note);
    criterion(7, "derived complexes match the printed lists term by term", c7, note);

    // 8. generation closure reaches all containments and the four summand lists
    note.clear();
    bool c8 = rows_pass(run,
                        {"tgt_u3", "tgt_u2", "tgt_2u4", "tgt_u2u4", "tgt_u3u4", "tgt_u2u3",
                         "tgt_2u3", "tgt_3u4", "tgt_u32u4", "tgt_2u2", "tgt_u22u4", "key_case_o",
                         "key_case_u4", "key_case_2u4", "key_case_tt"},
                        note);
    criterion(8, "generation closure reaches (4.16)-(4.26) and the four summand lists match", c8,
              note);

    // 9. branching identities with the dimension ledger
    note.clear();
    bool c9 = rows_pass(run,
                        {"br_w1_b4", "br_w4_b4", "br_w1_d4", "br_w4_d4",
                         "br_claims_dims_adjoint", "br_claims_dims_minuscule"},
                        note);
    criterion(9, "branching identities hold with 52 = 36+16 = 28+8+8+8 and 26 = 9+16+1 = 8+8+8+2",
              c9, note);

    // 10. Schubert counts and the recomputed dimension/index
    note.clear();
    bool c10 = rows_pass(run,
                         {"br_claims_cells_f4", "br_claims_cells_b4", "br_claims_dim_index",
                          "lefschetz"},
                         note);
    criterion(10, "24 cells via 1152/48 and 384/16; collection length 24; dim 15, index 8", c10,
              note);

    // 11. property suites
    note.clear();
    bool c11 = rows_pass(
        run, {"char_winv", "bott", "serre3", "wedge_euler_u4", "peel_cross"}, note);
    criterion(11, "invariance, concentration, Serre, exterior-algebra and peeling suites", c11,
              note);

    // 12. byte-identical reports, in process and through the real executable
    note.clear();
    bool c12 = report_json(run) == report_json(run_ledger_file(WEYLBOTT_LEDGER_PATH));
    {
        std::string cmd1 = std::string(WEYLBOTT_CLI_PATH) + " verify-paper --format json --ledger " +
                           WEYLBOTT_LEDGER_PATH + " --out /tmp/weylbott_accept_1.json";
        std::string cmd2 = std::string(WEYLBOTT_CLI_PATH) + " verify-paper --format json --ledger " +
                           WEYLBOTT_LEDGER_PATH + " --out /tmp/weylbott_accept_2.json";
        int r1 = std::system(cmd1.c_str());
        int r2 = std::system(cmd2.c_str());
        if (r1 != 0 || r2 != 0) {
            c12 = false;
            note = "verify-paper exited nonzero";
        } else {
            std::string a = read_file("/tmp/weylbott_accept_1.json");
            std::string b = read_file("/tmp/weylbott_accept_2.json");
            if (a.empty() || a != b) {
                c12 = false;
                note = "reports differ between runs";
            }
        }
        std::remove("/tmp/weylbott_accept_1.json");
        std::remove("/tmp/weylbott_accept_2.json");
    }
    criterion(12, "consecutive verify-paper --format json runs are byte-identical", c12, note);

    std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << (12 - failures) << "/12)\n";
    return failures == 0 ? 0 : 1;
}
