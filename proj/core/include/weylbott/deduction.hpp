#pragma once

#include "weylbott/cohomology.hpp"

#include <optional>
#include <set>

namespace weylbott {

// G-representation factor of a relation term: V^hw or Lambda^k V^hw,
// restricted to the Levi as a trivialized bundle factor.
struct RepExpr {
    Weight hw;      // G-dominant lattice weight
    long wedge = 0; // 0: plain V^hw, k >= 2: Lambda^k V^hw

    Int dim(const RootDatum& d) const;
    VirtualCharacter character(const RootDatum& d) const;
    std::string str(const RootDatum& d) const;
    bool operator==(const RepExpr& o) const { return hw == o.hw && wedge == o.wedge; }
};

// One atom of a relation term: an irreducible bundle, optionally multiplied
// by a trivialized G-representation, or a named filtered object, optionally
// tensored by an irreducible bundle.
struct TermAtom {
    std::optional<RepExpr> rep;
    std::string formal; // empty unless a named object
    long formal_twist = 0;
    std::optional<IrreducibleBundle> bundle;
    Int mult = 1;

    std::string str() const; // canonical, without the multiplicity
};

using Term = std::vector<TermAtom>;

std::string term_str(const Term& t);
bool term_equal(const Term& a, const Term& b); // as normalized multisets

struct Relation {
    enum class Kind { Ses, Monad, Complex, Koszul };

    std::string id;
    std::string anchor;
    Kind kind = Kind::Ses;
    bool nonsplit = false;
    long first_position = 0; // Ses: 0..2, Monad: -1..1
    std::vector<Term> terms;
    std::optional<long> cohomology_position;
    Term cohomology;
    std::optional<IrreducibleBundle> koszul_section;

    std::string str() const;
};

// Filtered equivariant bundle known by its composition factors
// (socle-to-top) and the short exact sequence defining it.
struct FormalObjectDef {
    std::string name;
    std::vector<IrreducibleBundle> factors;
    std::string defining_ses;            // relation id; this object is its middle term
    std::optional<long> selfdual_twist;  // X^vee = X(selfdual_twist)
    std::string anchor;
};

// Reference to a proof object: a named formal object with a twist, or a sum
// of irreducible bundles.
struct ObjRef {
    std::string formal;
    long twist = 0;
    std::optional<BundleSum> sum;

    bool is_formal() const { return !formal.empty(); }
    ObjRef twisted(long t) const;
    std::string str() const;
};

enum class Verdict { Proven, Failed, Inconclusive };
std::string verdict_str(Verdict v);

struct TraceStep {
    std::string rule;
    std::string note;
};

struct ObligationSpec {
    std::string id;
    std::string anchor;
    ObjRef a, b;
    GradedRepTable expected;
    std::vector<std::string> chain; // eval | direct | ss | serre | flip | monad:<rel> | mutation:<rel>
};

struct ObligationResult {
    std::string id;
    Verdict verdict = Verdict::Inconclusive;
    std::string primary_rule;
    std::vector<TraceStep> steps;
    GradedRepTable computed;
    bool conclusive = false;
};

struct RelationCheck {
    bool ok = false;
    std::string detail;      // virtual character discrepancy when not ok
    std::vector<Int> ranks;  // term ranks in position order
    Int cohomology_rank = 0;
};

// closure over registered exact relations
struct ClosureUse {
    std::string relation;
    long t_lo = 0, t_hi = 0;
};

struct ClosureReport {
    std::set<std::string> generated;
    std::vector<std::pair<std::string, std::string>> additions; // atom, provenance
    bool contains(const std::string& atom) const { return generated.count(atom) > 0; }
};

// The deduction engine: registered objects and relations over one parabolic,
// an Ext evaluator with a shared fact cache, and the replay rules used by
// the obligation ledger. All conclusions are forced; connecting maps are
// never guessed.
class ProofEngine {
public:
    explicit ProofEngine(const ParabolicDatum& p);

    const ParabolicDatum& parabolic() const { return *parabolic_; }

    void define_object(FormalObjectDef def);
    bool has_object(const std::string& name) const { return objects_.count(name) > 0; }
    const FormalObjectDef& object(const std::string& name) const;

    // validates the class identity before accepting; throws on mismatch
    void register_relation(Relation r);
    bool has_relation(const std::string& id) const { return relations_.count(id) > 0; }
    const Relation& relation(const std::string& id) const;
    RelationCheck validate_relation(const Relation& r) const;

    VirtualCharacter term_character(const Term& t) const;
    Int term_rank(const Term& t) const;

    Relation tensor_relation(const Relation& r, const IrreducibleBundle& u, std::string id) const;
    Relation wedge_relation(const Relation& r, long q, std::string id) const;

    BundleSum semisimplification(const ObjRef& o) const;

    struct EvalOutcome {
        bool conclusive = false;
        GradedRepTable table;
    };
    // recursive forced-LES evaluation through defining sequences, consulting
    // the fact cache first
    EvalOutcome eval_ext(const ObjRef& a, const ObjRef& b);

    // sufficient criterion: Ext between all pairs of composition factors
    // vanishes
    Verdict ext_filtered_upper(const ObjRef& a, const ObjRef& b);

    ObligationResult propagate(const ObligationSpec& spec);

    ClosureReport generation_closure(const std::vector<std::string>& seed_atoms,
                                     const std::vector<ClosureUse>& uses) const;

    // canonical closure atom for a bundle / formal object
    static std::string atom_of(const IrreducibleBundle& b) { return b.str(); }
    std::string atom_of_formal(const std::string& name, long twist) const;

    long dim_gp() const { return long(parabolic_->dim_gp()); }
    long fano_index() const { return parabolic_->fano_index(); }

private:
    void normalize_pair(ObjRef& a, ObjRef& b) const; // twists both in place
    ObjRef dual_ref(const ObjRef& o) const;
    ObjRef term_to_objref(const Term& t, long twist) const;

    EvalOutcome eval_ext_impl(const ObjRef& a, const ObjRef& b, int depth);
    GradedRepTable direct_ext(const ObjRef& a, const ObjRef& b) const;

    EvalOutcome monad_transfer(const Relation& rel, const ObjRef& a, const ObjRef& b,
                               std::vector<TraceStep>& steps);
    std::optional<GradedRepTable> mutation_vanishing(const Relation& rel, const ObjRef& a,
                                                     const ObjRef& b, std::vector<TraceStep>& steps,
                                                     std::string& failure);

    const ParabolicDatum* parabolic_;
    std::map<std::string, FormalObjectDef> objects_;
    std::map<std::string, Relation> relations_;
    std::map<std::string, EvalOutcome> cache_;
};

// Branching, restriction-rank and Schubert-count checks for the F4 family of
// subgroup restrictions; independent of any ProofEngine state.
struct NamedCheck {
    std::string id;
    bool pass = false;
    std::string detail;
};
std::vector<NamedCheck> branch_claim_checks();

} // namespace weylbott
