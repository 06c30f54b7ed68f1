#include "weylbott/deduction.hpp"
#include "weylbott/ledger.hpp"

#include <doctest.h>

using namespace weylbott;

namespace {

const ParabolicDatum& P() { return ParabolicDatum::get('F', 4, 1); }

IrreducibleBundle U(std::vector<long> nonk, long t = 0) {
    return IrreducibleBundle::from_coords(P(), nonk, t);
}

TermAtom bundle_atom(std::vector<long> c, long t = 0, long mult = 1) {
    TermAtom a;
    a.bundle = U(c, t);
    a.mult = mult;
    return a;
}

TermAtom formal_atom(std::string n, long t = 0) {
    TermAtom a;
    a.formal = std::move(n);
    a.formal_twist = t;
    return a;
}

TermAtom rep_atom(std::vector<long> g, std::vector<long> c, long t = 0) {
    TermAtom a;
    a.rep = RepExpr{P().ambient().from_fundamental_long(g), 0};
    a.bundle = U(c, t);
    return a;
}

ObjRef formal_ref(std::string n, long t = 0) {
    ObjRef o;
    o.formal = std::move(n);
    o.twist = t;
    return o;
}

ObjRef bundle_ref(std::vector<long> c, long t = 0) {
    ObjRef o;
    o.sum = BundleSum::single(U(c, t));
    return o;
}

GradedRepTable k_at(long degree) {
    GradedRepTable t(P().ambient());
    t.add(degree, Weight::zero(4));
    return t;
}

// engine populated with the tangent-extension objects and monads
struct Fixture {
    ProofEngine eng{P()};

    Fixture() {
        eng.define_object({"T", {U({1, 0, 0}, -1), U({0, 0, 0}, 1)}, "ses_tangent", std::nullopt, ""});
        eng.define_object({"Tt", {U({0, 0, 0}), U({1, 0, 0}, -1), U({0, 0, 0}, 1)}, "ses_ttilde",
                           -1, ""});

        Relation st;
        st.id = "ses_tangent";
        st.kind = Relation::Kind::Ses;
        st.nonsplit = true;
        st.terms = {{bundle_atom({1, 0, 0}, -1)}, {formal_atom("T")}, {bundle_atom({0, 0, 0}, 1)}};
        eng.register_relation(st);

        Relation se;
        se.id = "ses_ttilde";
        se.kind = Relation::Kind::Ses;
        se.nonsplit = true;
        se.terms = {{bundle_atom({0, 0, 0})}, {formal_atom("Tt")}, {formal_atom("T")}};
        eng.register_relation(se);

        Relation mt;
        mt.id = "monad_ttilde";
        mt.kind = Relation::Kind::Monad;
        mt.first_position = -1;
        mt.cohomology_position = 0;
        mt.terms = {{formal_atom("Tt", -1)},
                    {rep_atom({1, 0, 0, 0}, {0, 0, 0}), bundle_atom({0, 0, 0})},
                    {formal_atom("Tt")}};
        mt.cohomology = {bundle_atom({0, 0, 2}, -1)};
        eng.register_relation(mt);

        Relation mu;
        mu.id = "monad_u4";
        mu.kind = Relation::Kind::Monad;
        mu.first_position = -1;
        mu.cohomology_position = 0;
        mu.terms = {{bundle_atom({0, 0, 1}, -1)}, {rep_atom({0, 0, 0, 1}, {0, 0, 0})},
                    {bundle_atom({0, 0, 1})}};
        mu.cohomology = {bundle_atom({0, 1, 0}, -1)};
        eng.register_relation(mu);
    }
};

} // namespace

TEST_CASE("relation registration validates the class identity") {
    Fixture f;

    // ranks match the printed bookkeeping
    RelationCheck mt = f.eng.validate_relation(f.eng.relation("monad_ttilde"));
    REQUIRE(mt.ranks.size() == 3);
    CHECK(mt.ranks[0] == 16);
    CHECK(mt.ranks[1] == 53);
    CHECK(mt.ranks[2] == 16);
    CHECK(mt.cohomology_rank == 21);

    RelationCheck mu = f.eng.validate_relation(f.eng.relation("monad_u4"));
    CHECK(mu.ranks[1] == 26);
    CHECK(mu.cohomology_rank == 14);

    // a corrupted cohomology claim is rejected with the discrepancy
    Relation bad;
    bad.id = "bad_monad";
    bad.kind = Relation::Kind::Monad;
    bad.first_position = -1;
    bad.cohomology_position = 0;
    bad.terms = {{bundle_atom({0, 0, 1}, -1)}, {rep_atom({0, 0, 0, 1}, {0, 0, 0})},
                 {bundle_atom({0, 0, 1})}};
    bad.cohomology = {bundle_atom({0, 1, 0})}; // missing the twist
    RelationCheck chk = f.eng.validate_relation(bad);
    CHECK_FALSE(chk.ok);
    CHECK(chk.detail.find("discrepancy") != std::string::npos);
    CHECK_THROWS_AS(f.eng.register_relation(bad), std::invalid_argument);
}

TEST_CASE("koszul bookkeeping telescopes") {
    Fixture f;
    Relation k;
    k.id = "koszul";
    k.kind = Relation::Kind::Koszul;
    k.koszul_section = U({0, 0, 1});
    CHECK(f.eng.validate_relation(k).ok);

    Int alternating = 0;
    for (long j = 0; j <= 6; ++j) alternating += (j % 2 == 0 ? 1 : -1) * binomial(6, j);
    CHECK(alternating == 0);
}

TEST_CASE("derived relations reproduce the printed complexes") {
    Fixture f;

    Relation d2 = f.eng.tensor_relation(f.eng.relation("monad_u4"), U({0, 0, 1}), "d2");
    REQUIRE(d2.terms.size() == 3);
    CHECK(term_str(d2.terms[0]) == "O + U[0,0,2](-1) + U[0,1,0](-1)");
    CHECK(term_str(d2.terms[1]) == "V[0,0,0,1]*U[0,0,1]");
    CHECK(term_str(d2.terms[2]) == "O(1) + U[0,0,2] + U[0,1,0]");
    CHECK(term_str(d2.cohomology) == "U[0,0,1] + U[0,1,1](-1) + U[1,0,0](-1)");
    CHECK_NOTHROW(f.eng.register_relation(d2)); // class identity survives derivation

    Relation d5 = f.eng.wedge_relation(f.eng.relation("monad_u4"), 2, "d5");
    REQUIRE(d5.terms.size() == 5);
    CHECK(d5.first_position == -2);
    CHECK(term_str(d5.terms[0]) == "U[0,0,2](-2)");
    CHECK(term_str(d5.terms[1]) == "V[0,0,0,1]*U[0,0,1](-1)");
    CHECK(term_str(d5.terms[2]) == "L2V[0,0,0,1]*O + O + U[0,0,2](-1) + U[0,1,0](-1)");
    CHECK(term_str(d5.terms[3]) == "V[0,0,0,1]*U[0,0,1]");
    CHECK(term_str(d5.terms[4]) == "U[0,0,2]");
    CHECK(term_str(d5.cohomology) == "U[0,0,2](-1) + U[1,0,1](-2)");
    CHECK_NOTHROW(f.eng.register_relation(d5));

    Relation d6 = f.eng.wedge_relation(f.eng.relation("monad_u4"), 3, "d6");
    REQUIRE(d6.terms.size() == 7);
    CHECK(term_str(d6.cohomology) ==
          "U[0,0,2](-1) + U[0,1,2](-2) + U[1,0,1](-2) + U[2,0,0](-3)");
    CHECK_NOTHROW(f.eng.register_relation(d6));

    // tensoring a monad with a filtered middle keeps the object symbolic
    Relation dtt = f.eng.tensor_relation(f.eng.relation("monad_ttilde"), U({0, 0, 1}), "dtt");
    CHECK(term_str(dtt.terms[0]) == "Tt*U[0,0,1](-1)");
    CHECK(term_str(dtt.terms[2]) == "Tt*U[0,0,1]");
    CHECK(term_str(dtt.cohomology) == "U[0,0,1] + U[0,0,3](-1) + U[0,1,1](-1)");
    CHECK_NOTHROW(f.eng.register_relation(dtt));
}

TEST_CASE("semisimplification bounds filtered Ext from above") {
    Fixture f;
    for (long t = 1; t <= 6; ++t)
        CHECK(f.eng.ext_filtered_upper(formal_ref("Tt", t), bundle_ref({0, 0, 0})) ==
              Verdict::Proven);
    for (long t = 2; t <= 6; ++t)
        CHECK(f.eng.ext_filtered_upper(formal_ref("Tt", t), formal_ref("Tt")) == Verdict::Proven);
    // the diagonal has non-vanishing factor pairs; only the monad route settles it
    CHECK(f.eng.ext_filtered_upper(formal_ref("Tt"), formal_ref("Tt")) == Verdict::Inconclusive);
}

TEST_CASE("the forced evaluator never guesses") {
    Fixture f;
    auto e = f.eng.eval_ext(formal_ref("T"), bundle_ref({0, 0, 0}));
    REQUIRE(e.conclusive);
    CHECK(e.table == k_at(1));

    // the diagonal is not determined by long exact sequences alone
    CHECK_FALSE(f.eng.eval_ext(formal_ref("Tt"), formal_ref("Tt")).conclusive);
    // nor is the pair that needs the mutation axiom
    CHECK_FALSE(f.eng.eval_ext(formal_ref("Tt"), bundle_ref({0, 0, 0})).conclusive);

    auto forced = f.eng.eval_ext(formal_ref("Tt"), bundle_ref({0, 0, 2}, -1));
    REQUIRE(forced.conclusive);
    CHECK(forced.table == k_at(1));
}

TEST_CASE("obligation replay mirrors the proof") {
    Fixture f;
    GradedRepTable zero(P().ambient());

    auto run = [&](const std::string& id, ObjRef a, ObjRef b, GradedRepTable expect,
                   std::vector<std::string> chain) {
        ObligationSpec spec{id, "", std::move(a), std::move(b), std::move(expect),
                            std::move(chain)};
        return f.eng.propagate(spec);
    };

    // the lemmas, in proof order
    CHECK(run("tt_o", formal_ref("Tt"), bundle_ref({0, 0, 0}), zero,
              {"mutation:ses_ttilde"}).verdict == Verdict::Proven);
    CHECK(run("o1_t", bundle_ref({0, 0, 0}, 1), formal_ref("T"), zero,
              {"mutation:ses_tangent"}).verdict == Verdict::Proven);
    CHECK(run("tt1_tt", formal_ref("Tt", 1), formal_ref("Tt"), zero,
              {"monad:monad_ttilde"}).verdict == Verdict::Proven);
    ObligationResult diag =
        run("tt_tt", formal_ref("Tt"), formal_ref("Tt"), k_at(0), {"monad:monad_ttilde"});
    CHECK(diag.verdict == Verdict::Proven);
    CHECK(diag.computed == k_at(0));

    // Serre reduction sends t = 7 to the known t = 1 case
    CHECK(run("tt7_tt", formal_ref("Tt", 7), formal_ref("Tt"), zero, {"serre", "eval"}).verdict ==
          Verdict::Proven);

    // flip plus monad transfer settles complete orthogonality, both ways
    CHECK(run("tt_u4", formal_ref("Tt"), bundle_ref({0, 0, 1}), zero,
              {"flip", "monad:monad_ttilde"}).verdict == Verdict::Proven);
    CHECK(run("u4_tt", bundle_ref({0, 0, 1}), formal_ref("Tt"), zero,
              {"monad:monad_ttilde"}).verdict == Verdict::Proven);

    // a mutation with unmet side conditions fails with the violated condition
    ObligationResult bad =
        run("bad", formal_ref("Tt"), bundle_ref({0, 0, 1}), zero, {"mutation:ses_ttilde"});
    CHECK(bad.verdict == Verdict::Failed);

    // an eval that cannot force the answer stays inconclusive (on a fresh
    // engine; the fixture above has already cached the monad conclusion)
    {
        Fixture fresh;
        ObligationSpec spec{"inc", "", formal_ref("Tt"), formal_ref("Tt"), k_at(0), {"eval"}};
        CHECK(fresh.eng.propagate(spec).verdict == Verdict::Inconclusive);
    }

    // a wrong expectation is a failure, not an inconclusive
    ObligationResult wrong =
        run("wrong", formal_ref("T"), bundle_ref({0, 0, 0}), zero, {"eval"});
    CHECK(wrong.verdict == Verdict::Failed);
    CHECK(wrong.computed == k_at(1));
}

TEST_CASE("replay determinism") {
    auto run_once = [] {
        Fixture f;
        ObligationSpec spec{"tt_tt", "", formal_ref("Tt"), formal_ref("Tt"), k_at(0),
                            {"monad:monad_ttilde"}};
        // the monad rule needs the cached lemmas, exactly as in the ledger
        ObligationSpec l2{"l2", "", formal_ref("Tt"), bundle_ref({0, 0, 0}),
                          GradedRepTable(P().ambient()), {"mutation:ses_ttilde"}};
        ObligationSpec l5{"l5", "", formal_ref("Tt", 1), formal_ref("Tt"),
                          GradedRepTable(P().ambient()), {"monad:monad_ttilde"}};
        f.eng.propagate(l2);
        f.eng.propagate(l5);
        ObligationResult res = f.eng.propagate(spec);
        std::string serialized = res.id + "|" + verdict_str(res.verdict) + "|" +
                                 res.computed.str() + "|" + res.primary_rule;
        for (const auto& s : res.steps) serialized += "|" + s.rule + ":" + s.note;
        return serialized;
    };
    CHECK(run_once() == run_once());
}

TEST_CASE("generation closure is a monotone fixpoint") {
    Fixture f;

    // seeds alone are a fixpoint of the empty relation set
    std::vector<std::string> seeds = {"O", "U[0,0,1]", "Tt"};
    ClosureReport trivial = f.eng.generation_closure(seeds, {});
    CHECK(trivial.generated == std::set<std::string>(seeds.begin(), seeds.end()));

    // two-out-of-three through the defining extensions
    std::vector<std::string> collection_seeds;
    for (long t = 0; t <= 7; ++t) {
        collection_seeds.push_back(U({0, 0, 0}, t).str());
        collection_seeds.push_back(U({0, 0, 1}, t).str());
        collection_seeds.push_back(f.eng.atom_of_formal("Tt", t));
    }
    std::vector<ClosureUse> uses = {{"ses_ttilde", 0, 6}, {"ses_tangent", 0, 6},
                                    {"monad_u4", 1, 7}, {"monad_ttilde", 1, 7}};
    ClosureReport rep = f.eng.generation_closure(collection_seeds, uses);
    for (long m = 0; m <= 6; ++m) CHECK(rep.contains(U({0, 1, 0}, m).str()));
    for (long m = -1; m <= 5; ++m) CHECK(rep.contains(U({1, 0, 0}, m).str()));
    for (long m = 0; m <= 6; ++m) CHECK(rep.contains(U({0, 0, 2}, m).str()));
    CHECK_FALSE(rep.contains(U({1, 0, 1}, 0).str())); // needs the derived complexes

    // monotone: adding a relation only grows the generated set
    ClosureReport bigger = f.eng.generation_closure(
        collection_seeds, {{"ses_ttilde", 0, 6}, {"ses_tangent", 0, 6}, {"monad_u4", 1, 7},
                           {"monad_ttilde", 1, 7}, {"monad_u4", 0, 0}});
    for (const auto& a : rep.generated) CHECK(bigger.contains(a));

    // processing order does not matter
    std::vector<ClosureUse> reversed(uses.rbegin(), uses.rend());
    CHECK(f.eng.generation_closure(collection_seeds, reversed).generated == rep.generated);
}

TEST_CASE("forced Ext tables agree with the Euler pairing of the factors") {
    Fixture f;
    // prove the lemmas the monad rule consumes, as the ledger does
    GradedRepTable zero(P().ambient());
    f.eng.propagate({"l2", "", formal_ref("Tt"), bundle_ref({0, 0, 0}), zero,
                     {"mutation:ses_ttilde"}});
    f.eng.propagate({"l5", "", formal_ref("Tt", 1), formal_ref("Tt"), zero,
                     {"monad:monad_ttilde"}});

    auto euler_via_factors = [&](const ObjRef& a, const ObjRef& b) {
        return ext_semisimple(f.eng.semisimplification(a), f.eng.semisimplification(b))
            .euler_characteristic();
    };

    ObligationResult diag = f.eng.propagate(
        {"diag", "", formal_ref("Tt"), formal_ref("Tt"), k_at(0), {"monad:monad_ttilde"}});
    REQUIRE(diag.verdict == Verdict::Proven);
    CHECK(diag.computed.euler_characteristic() ==
          euler_via_factors(formal_ref("Tt"), formal_ref("Tt")));

    auto forced = f.eng.eval_ext(formal_ref("Tt"), bundle_ref({0, 0, 2}, -1));
    REQUIRE(forced.conclusive);
    CHECK(forced.table.euler_characteristic() ==
          euler_via_factors(formal_ref("Tt"), bundle_ref({0, 0, 2}, -1)));
}

TEST_CASE("traces serialize, reload and re-run to the same verdict") {
    Fixture f;
    ObligationSpec spec{"tt2_tt", "replay probe", formal_ref("Tt", 2), formal_ref("Tt"),
                        GradedRepTable(P().ambient()), {"eval"}};
    ObligationResult res = f.eng.propagate(spec);
    REQUIRE(res.verdict == Verdict::Proven);

    std::string serialized = trace_json(spec, res);
    CHECK(serialized.find("\"verdict\": \"PROVEN\"") != std::string::npos);

    LoadedTrace loaded = trace_from_json(P(), {"T", "Tt"}, serialized);
    CHECK(loaded.recorded_verdict == "PROVEN");
    Fixture fresh;
    ObligationResult rerun = fresh.eng.propagate(loaded.spec);
    CHECK(verdict_str(rerun.verdict) == loaded.recorded_verdict);
    CHECK(trace_json(loaded.spec, rerun) == serialized);
}

TEST_CASE("branching and counting claims") {
    for (const auto& c : branch_claim_checks()) {
        CAPTURE(c.id);
        CAPTURE(c.detail);
        CHECK(c.pass);
    }
}
