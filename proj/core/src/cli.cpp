#include "weylbott/cli.hpp"

#include "weylbott/report.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace weylbott {

namespace {

using ordered_json = nlohmann::ordered_json;

struct GroupArgs {
    std::string type = "F4";
    int node = 0;
};

std::pair<char, int> parse_type(const std::string& t) {
    if (t.size() < 2 || !std::isalpha(static_cast<unsigned char>(t[0])))
        throw std::invalid_argument("bad Dynkin type '" + t + "', expected e.g. F4");
    return {char(std::toupper(static_cast<unsigned char>(t[0]))), std::stoi(t.substr(1))};
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw std::invalid_argument("empty coordinate in '" + s + "'");
        auto slash = cur.find('/');
        if (slash == std::string::npos)
            out.emplace_back(Int(cur));
        else
            out.emplace_back(Int(cur.substr(0, slash)), Int(cur.substr(slash + 1)));
        cur.clear();
    };
    for (char c : s) {
        if (c == ',')
            flush();
        else if (!std::isspace(static_cast<unsigned char>(c)))
            cur += c;
    }
    flush();
    return out;
}

Weight parse_weight(const RootDatum& d, const std::string& coords, bool euclidean) {
    auto v = parse_rat_list(coords);
    if (euclidean) {
        if (v.size() != d.ambient_dim())
            throw std::invalid_argument("expected " + std::to_string(d.ambient_dim()) +
                                        " Euclidean coordinates");
        return Weight(v);
    }
    if (v.size() != std::size_t(d.rank()))
        throw std::invalid_argument("expected " + std::to_string(d.rank()) +
                                    " fundamental coordinates");
    return d.from_fundamental(v);
}

std::string coords_str(const std::vector<Rat>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s;
}

ordered_json table_json(const GradedRepTable& t) {
    ordered_json out = ordered_json::array();
    for (const auto& [d, ws] : t.entries())
        for (const auto& [hw, m] : ws) {
            ordered_json row;
            row["degree"] = d;
            row["weight"] = coords_str(t.group()->fundamental_coords(hw));
            row["multiplicity"] = m.str();
            row["dim"] = dimension(WeightSystem::full(*t.group()), hw).str();
            out.push_back(std::move(row));
        }
    return out;
}

std::string resolve_ledger(const std::string& overridden) {
    if (!overridden.empty()) return overridden;
    for (const auto& path : default_ledger_paths()) {
        std::ifstream f(path);
        if (f) return path;
    }
    throw std::invalid_argument("cannot locate paper_f4.ledger; pass --ledger");
}

void emit(std::ostream& out, const std::string& format, const ordered_json& j,
          const std::string& text) {
    if (format == "json")
        out << j.dump(2) << "\n";
    else
        out << text;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Lie-theoretic calculator and proof replayer for equivariant "
                 "bundles on G/P"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table";
    app.add_option("--format", format, "output format: table or json")
        ->check(CLI::IsMember({"table", "json"}));

    GroupArgs ga;
    std::string hw_str, a_str, b_str, range_str, ledger_path, out_path, from_str, to_str;
    long k_arg = 0, twist_arg = 0;
    bool euclidean = false;

    auto add_group = [&](CLI::App* cmd, bool with_node) {
        cmd->add_option("--type", ga.type, "Dynkin type, e.g. F4");
        if (with_node) cmd->add_option("--node", ga.node, "marked node (1-based)");
    };

    auto* roots = app.add_subcommand("roots", "root datum and parabolic summary");
    add_group(roots, true);

    auto* dom = app.add_subcommand("dominantize", "dominant representative, length, singularity");
    add_group(dom, false);
    dom->add_option("--hw", hw_str, "weight (fundamental coordinates)")->required();
    dom->add_flag("--euclidean", euclidean, "interpret --hw as Euclidean coordinates");

    auto* dim_cmd = app.add_subcommand("dim", "irreducible dimension (group or Levi)");
    add_group(dim_cmd, true);
    dim_cmd->add_option("--hw", hw_str)->required();

    auto* tensor_cmd = app.add_subcommand("tensor", "tensor decomposition (both routes)");
    add_group(tensor_cmd, true);
    tensor_cmd->add_option("--a", a_str, "first factor (fundamental coordinates)")->required();
    tensor_cmd->add_option("--b", b_str, "second factor")->required();

    auto* wedge_cmd = app.add_subcommand("wedge", "exterior power of a bundle");
    add_group(wedge_cmd, true);
    wedge_cmd->add_option("--hw", hw_str)->required();
    wedge_cmd->add_option("--k", k_arg)->required();

    auto* sym_cmd = app.add_subcommand("sym", "symmetric power of a bundle");
    add_group(sym_cmd, true);
    sym_cmd->add_option("--hw", hw_str)->required();
    sym_cmd->add_option("--k", k_arg)->required();

    auto* dual_cmd = app.add_subcommand("dual", "dual of an irreducible bundle");
    add_group(dual_cmd, true);
    dual_cmd->add_option("--hw", hw_str)->required();

    auto* bwb_cmd = app.add_subcommand("bwb", "sheaf cohomology by Borel-Weil-Bott");
    add_group(bwb_cmd, true);
    bwb_cmd->add_option("--hw", hw_str)->required();
    bwb_cmd->add_option("--twist", twist_arg, "extra twist added to the marked coordinate");

    auto* ext_cmd = app.add_subcommand("ext", "graded Ext between sums of irreducibles");
    add_group(ext_cmd, true);
    ext_cmd->add_option("--a", a_str, "first argument (bundle grammar)")->required();
    ext_cmd->add_option("--b", b_str, "second argument (bundle grammar)")->required();

    auto* scan_cmd = app.add_subcommand("scan-acyclic", "acyclicity verdicts over a twist range");
    add_group(scan_cmd, true);
    scan_cmd->add_option("--hw", hw_str, "family weight; marked coordinate must be 0")->required();
    scan_cmd->add_option("--range", range_str, "twist range lo..hi")->required();

    auto* branch_cmd = app.add_subcommand("branch", "restriction to a subgroup");
    branch_cmd->add_option("--from", from_str, "source group (F4 or B4)");
    branch_cmd->add_option("--to", to_str, "target group (B4 or D4)");
    branch_cmd->add_option("--hw", hw_str, "source highest weight; omit for the full claim set");

    auto* closure_cmd = app.add_subcommand("closure", "generation closure from the ledger");
    closure_cmd->add_option("--ledger", ledger_path, "ledger file override");

    auto* verify_cmd = app.add_subcommand("verify-paper", "replay the full bundled ledger");
    verify_cmd->add_option("--ledger", ledger_path, "ledger file override");
    verify_cmd->add_option("--out", out_path, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        auto [type, rank] = parse_type(ga.type);
        const RootDatum& datum = RootDatum::get(type, rank);

        auto need_parabolic = [&]() -> const ParabolicDatum& {
            if (ga.node == 0)
                throw std::invalid_argument("this command needs --node");
            return ParabolicDatum::get(type, rank, ga.node);
        };
        auto bundle_from_hw = [&](const std::string& s, long extra_twist) {
            const auto& p = need_parabolic();
            Weight w = parse_weight(datum, s, false);
            return IrreducibleBundle(p, w).twisted(extra_twist);
        };

        if (roots->parsed()) {
            ordered_json j;
            j["type"] = datum.name();
            j["positive_roots"] = datum.positive_roots().size();
            j["weyl_order"] = datum.weyl_order().str();
            std::ostringstream os;
            os << datum.name() << ": " << datum.positive_roots().size() << " positive roots, |W| = "
               << datum.weyl_order() << "\n";
            os << "rho = " << datum.rho().str() << "\n";
            for (int i = 0; i < datum.rank(); ++i)
                os << "  alpha_" << i + 1 << " = " << datum.simple_roots()[std::size_t(i)].str()
                   << "   omega_" << i + 1 << " = "
                   << datum.fundamental_weights()[std::size_t(i)].str() << "\n";
            if (ga.node != 0) {
                const auto& p = need_parabolic();
                j["parabolic"] = p.name();
                j["levi_type"] = p.levi_semisimple_type();
                j["levi_weyl_order"] = p.levi_weyl_order().str();
                j["dim"] = p.dim_gp();
                j["index"] = p.fano_index();
                os << p.name() << ": Levi " << p.levi_semisimple_type() << ", |W_L| = "
                   << p.levi_weyl_order() << ", |R(L)| = " << p.levi_positive_roots().size()
                   << ", dim " << p.dim_gp() << ", index " << p.fano_index() << "\n";
                os << "Schubert cells: " << (datum.weyl_order() / p.levi_weyl_order()) << "\n";
                os << "L-dominant nilradical weights:";
                for (const auto& e : p.nilradical())
                    if (e.l_dominant)
                        os << " " << coords_str(datum.fundamental_coords(e.weight)) << " (degree "
                           << e.degree << ")";
                os << "\n";
            }
            emit(out, format, j, os.str());
            return 0;
        }

        if (dom->parsed()) {
            Weight w = parse_weight(datum, hw_str, euclidean);
            Dominantization d = datum.dominantize(w);
            ordered_json j;
            j["input"] = coords_str(datum.fundamental_coords(w));
            j["dominant"] = coords_str(datum.fundamental_coords(d.dominant));
            j["euclidean"] = d.dominant.str();
            j["length"] = d.length;
            j["singular"] = d.singular;
            std::ostringstream os;
            os << "dominant = " << coords_str(datum.fundamental_coords(d.dominant))
               << "  (Euclidean " << d.dominant.str() << ")\nlength = " << d.length
               << "\nsingular = " << (d.singular ? "true" : "false") << "\n";
            emit(out, format, j, os.str());
            return 0;
        }

        if (dim_cmd->parsed()) {
            Weight w = parse_weight(datum, hw_str, false);
            const WeightSystem& sys = ga.node == 0 ? WeightSystem::full(datum)
                                                   : WeightSystem::levi(need_parabolic());
            Int d = dimension(sys, w);
            ordered_json j;
            j["dim"] = d.str();
            emit(out, format, j, d.str() + "\n");
            return 0;
        }

        if (tensor_cmd->parsed()) {
            if (ga.node != 0) {
                IrreducibleBundle a = bundle_from_hw(a_str, 0), b = bundle_from_hw(b_str, 0);
                BundleSum s = tensor_bundles(a, b, TensorRoute::Both);
                ordered_json j;
                j["result"] = s.str();
                emit(out, format, j, s.str() + "\n");
            } else {
                const auto& sys = WeightSystem::full(datum);
                Decomposition d = tensor_decompose(sys, parse_weight(datum, a_str, false),
                                                   parse_weight(datum, b_str, false));
                ordered_json j;
                j["result"] = decomposition_str(sys, d);
                emit(out, format, j, decomposition_str(sys, d) + "\n");
            }
            return 0;
        }

        if (wedge_cmd->parsed() || sym_cmd->parsed()) {
            bool is_wedge = wedge_cmd->parsed();
            if (ga.node != 0) {
                IrreducibleBundle b = bundle_from_hw(hw_str, 0);
                BundleSum s = is_wedge ? exterior_bundle(b, k_arg, TensorRoute::Both)
                                       : symmetric_bundle(b, k_arg, TensorRoute::Both);
                ordered_json j;
                j["result"] = s.str();
                emit(out, format, j, s.str() + "\n");
            } else {
                const auto& sys = WeightSystem::full(datum);
                Weight w = parse_weight(datum, hw_str, false);
                Decomposition d =
                    is_wedge ? exterior_power(sys, w, k_arg) : symmetric_power(sys, w, k_arg);
                ordered_json j;
                j["result"] = decomposition_str(sys, d);
                emit(out, format, j, decomposition_str(sys, d) + "\n");
            }
            return 0;
        }

        if (dual_cmd->parsed()) {
            IrreducibleBundle b = bundle_from_hw(hw_str, 0);
            IrreducibleBundle d = dual_bundle(b);
            ordered_json j;
            j["result"] = d.str();
            emit(out, format, j, d.str() + "\n");
            return 0;
        }

        if (bwb_cmd->parsed()) {
            IrreducibleBundle b = bundle_from_hw(hw_str, twist_arg);
            GradedRepTable t = cohomology(b);
            ordered_json j;
            j["bundle"] = b.str();
            j["cohomology"] = table_json(t);
            std::ostringstream os;
            os << "H(" << b.str() << ") = " << t.str();
            if (!t.empty()) os << "   (dim " << t.total_dimension() << ")";
            os << "\n";
            emit(out, format, j, os.str());
            return 0;
        }

        if (ext_cmd->parsed()) {
            const auto& p = need_parabolic();
            BundleSum a = parse_bundle_sum(p, a_str), b = parse_bundle_sum(p, b_str);
            GradedRepTable t = ext_semisimple(a, b);
            ordered_json j;
            j["ext"] = table_json(t);
            std::ostringstream os;
            os << "Ext(" << a.str() << ", " << b.str() << ") = " << t.str() << "\n";
            emit(out, format, j, os.str());
            return 0;
        }

        if (scan_cmd->parsed()) {
            const auto& p = need_parabolic();
            IrreducibleBundle fam(p, parse_weight(datum, hw_str, false));
            if (fam.twist() != 0)
                throw std::invalid_argument("family weight must have marked coordinate 0");
            auto dots = range_str.find("..");
            if (dots == std::string::npos)
                throw std::invalid_argument("range must be lo..hi");
            long lo = std::stol(range_str.substr(0, dots));
            long hi = std::stol(range_str.substr(dots + 2));
            auto scan = acyclicity_scan(p, fam.nonk_coords(), lo, hi);
            ordered_json arr = ordered_json::array();
            std::ostringstream os;
            for (const auto& v : scan) {
                ordered_json row;
                row["twist"] = v.twist;
                row["acyclic"] = v.acyclic;
                if (!v.acyclic) {
                    row["degree"] = v.degree;
                    row["dim"] = v.dim.str();
                }
                arr.push_back(std::move(row));
                os << fam.twisted(v.twist).str() << ": "
                   << (v.acyclic ? "acyclic"
                                 : "H^" + std::to_string(v.degree) + " of dim " + v.dim.str())
                   << "\n";
            }
            ordered_json j;
            j["family"] = fam.str();
            j["verdicts"] = arr;
            emit(out, format, j, os.str());
            return 0;
        }

        if (branch_cmd->parsed()) {
            if (!hw_str.empty()) {
                const WeightMap* map = nullptr;
                if (from_str == "F4" && to_str == "B4") map = &restriction_map_f4_b4();
                if (from_str == "F4" && to_str == "D4") map = &restriction_map_f4_d4();
                if (from_str == "B4" && to_str == "D4") map = &restriction_map_b4_d4();
                if (!map)
                    throw std::invalid_argument("supported restrictions: F4->B4, F4->D4, B4->D4");
                const auto& src = WeightSystem::full(*map->source);
                const auto& tgt = WeightSystem::full(*map->target);
                Weight w = parse_weight(*map->source, hw_str, false);
                Decomposition d = restrict_representation(src, w, *map, tgt);
                ordered_json j;
                j["result"] = decomposition_str(tgt, d);
                emit(out, format, j, decomposition_str(tgt, d) + "\n");
                return 0;
            }
            auto checks = branch_claim_checks();
            bool all = true;
            ordered_json arr = ordered_json::array();
            std::ostringstream os;
            for (const auto& c : checks) {
                all = all && c.pass;
                ordered_json row;
                row["id"] = c.id;
                row["status"] = c.pass ? "pass" : "fail";
                row["detail"] = c.detail;
                arr.push_back(std::move(row));
                os << (c.pass ? "pass" : "FAIL") << "  " << c.id << ": " << c.detail << "\n";
            }
            ordered_json j;
            j["checks"] = arr;
            emit(out, format, j, os.str());
            return all ? 0 : 1;
        }

        if (closure_cmd->parsed() || verify_cmd->parsed()) {
            LedgerRun run = run_ledger_file(resolve_ledger(ledger_path));
            if (closure_cmd->parsed()) {
                LedgerRun filtered = run;
                filtered.checks.clear();
                for (const auto& c : run.checks)
                    if (c.section == "generation") filtered.checks.push_back(c);
                out << (format == "json" ? report_json(filtered) : report_table(filtered));
                return filtered.all_pass() ? 0 : 1;
            }
            std::string rendered =
                format == "json" ? report_json(run) : report_table(run);
            if (!out_path.empty()) {
                std::ofstream f(out_path, std::ios::binary);
                f << rendered;
            } else {
                out << rendered;
            }
            if (!run.all_pass()) {
                const CheckResult* f = run.first_failure();
                err << "verification failed at " << f->section << "/" << f->id << ": " << f->detail
                    << "\n";
                return 1;
            }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace weylbott
