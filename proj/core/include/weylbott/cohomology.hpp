#pragma once

#include "weylbott/bundle.hpp"

namespace weylbott {

// Graded table of dominant G-weights with multiplicities, used both for
// sheaf cohomology and for Ext groups between sums of irreducibles.
class GradedRepTable {
public:
    GradedRepTable() = default;
    explicit GradedRepTable(const RootDatum& group) : group_(&group) {}

    const RootDatum* group() const { return group_; }
    bool empty() const { return entries_.empty(); }
    const std::map<long, WeightMultiset>& entries() const { return entries_; }

    void add(long degree, const Weight& hw, Int mult = 1);
    void add(const GradedRepTable& o, const Int& mult = 1);

    Int dimension_at(long degree) const;
    Int total_dimension() const;
    Int euler_characteristic() const;

    // exactly the trivial representation, once, in the given degree
    bool is_single_trivial(long degree) const;

    // degree d |-> n - d with dualized representations
    GradedRepTable serre_transformed(long n) const;

    std::string str() const;
    bool operator==(const GradedRepTable& o) const { return entries_ == o.entries_; }

private:
    const RootDatum* group_ = nullptr;
    std::map<long, WeightMultiset> entries_;
};

// Borel-Weil-Bott: the cohomology of U^hw lives in a single degree, given by
// the dominantization length of hw + rho; singular hw + rho means acyclic.
GradedRepTable cohomology(const IrreducibleBundle& b);
GradedRepTable cohomology(const BundleSum& s);

// Ext^*(A, B) = H^*(B (x) A^vee), term by term.
GradedRepTable ext_semisimple(const BundleSum& a, const BundleSum& b);
GradedRepTable ext_semisimple(const IrreducibleBundle& a, const IrreducibleBundle& b);

struct AcyclicityVerdict {
    long twist = 0;
    bool acyclic = false;
    long degree = -1;      // cohomological degree when non-acyclic
    Int dim = 0;           // dimension of the nonzero cohomology
};

// Per-twist verdicts for the family U^{hw + t omega_k}, t in [lo, hi],
// sorted by twist.
std::vector<AcyclicityVerdict> acyclicity_scan(const ParabolicDatum& p,
                                               const std::vector<long>& nonk, long lo, long hi);

struct SerreReport {
    bool ok = false;
    std::string detail;
};

// H^d(E) against H^{n-d}(E^vee(-index))^vee, degree by degree.
SerreReport serre_check(const IrreducibleBundle& b);

} // namespace weylbott
