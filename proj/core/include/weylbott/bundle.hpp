#pragma once

#include "weylbott/character.hpp"

#include <map>
#include <vector>

namespace weylbott {

// Irreducible G-equivariant bundle U^hw on G/P_k: an L-dominant lattice
// weight. The omega_k coordinate is the twist by O(1).
class IrreducibleBundle {
public:
    IrreducibleBundle(const ParabolicDatum& p, Weight hw);
    static IrreducibleBundle from_coords(const ParabolicDatum& p, const std::vector<long>& nonk,
                                         long twist);
    static IrreducibleBundle structure_sheaf(const ParabolicDatum& p, long twist = 0);

    const ParabolicDatum& parabolic() const { return *parabolic_; }
    const Weight& highest_weight() const { return hw_; }
    long twist() const;
    std::vector<long> nonk_coords() const;
    bool is_line_bundle() const;

    IrreducibleBundle twisted(long t) const;

    std::string str() const;

    bool operator==(const IrreducibleBundle& o) const { return hw_ == o.hw_; }
    bool operator<(const IrreducibleBundle& o) const;

private:
    const ParabolicDatum* parabolic_;
    Weight hw_;
};

// Formal integer combination of irreducible bundles over one parabolic,
// ordered by (twist, fundamental coordinates) for reproducible output.
class BundleSum {
public:
    explicit BundleSum(const ParabolicDatum& p) : parabolic_(&p) {}

    const ParabolicDatum& parabolic() const { return *parabolic_; }
    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<IrreducibleBundle, Int>& terms() const { return terms_; }

    BundleSum& add(const IrreducibleBundle& b, Int mult = 1);
    BundleSum& add(const BundleSum& o, const Int& mult = 1);
    static BundleSum single(const IrreducibleBundle& b);

    bool is_non_virtual() const;
    Int rank() const;
    BundleSum twisted(long t) const;
    BundleSum dual() const;

    VirtualCharacter character() const;

    std::string str() const;
    bool operator==(const BundleSum& o) const { return terms_ == o.terms_; }

private:
    const ParabolicDatum* parabolic_;
    std::map<IrreducibleBundle, Int> terms_;
};

Rat central_charge(const ParabolicDatum& p, const Weight& w);

// hw -> -w_0^L hw; an involution
IrreducibleBundle dual_bundle(const IrreducibleBundle& b);

// dimension of the Levi irreducible; twist-invariant
Int rank_bundle(const IrreducibleBundle& b);

enum class TensorRoute { Klimyk, CentralCharge, Both };

// Tensor product of irreducible bundles. Route Klimyk works on the full
// reductive Levi lattice; route CentralCharge projects to the semisimple
// part, decomposes there, and lifts with the central correction
// (r_a + r_b - r_nu) omega_k. `Both` runs the two independently and throws
// std::logic_error if they disagree.
BundleSum tensor_bundles(const IrreducibleBundle& a, const IrreducibleBundle& b,
                         TensorRoute route = TensorRoute::Both);
BundleSum tensor_bundles(const BundleSum& a, const BundleSum& b,
                         TensorRoute route = TensorRoute::Both);

BundleSum exterior_bundle(const IrreducibleBundle& b, long k,
                          TensorRoute route = TensorRoute::Both);
BundleSum symmetric_bundle(const IrreducibleBundle& b, long k,
                           TensorRoute route = TensorRoute::Both);

// Grammar used by the CLI and the ledger: `U[a2,a3,a4](t)` lists the
// fundamental coordinates away from the marked node, `O(t)` abbreviates the
// all-zero case, multiplicities are written `m*U[...]`, sums use `+`.
IrreducibleBundle parse_bundle(const ParabolicDatum& p, const std::string& text);
BundleSum parse_bundle_sum(const ParabolicDatum& p, const std::string& text);

} // namespace weylbott
