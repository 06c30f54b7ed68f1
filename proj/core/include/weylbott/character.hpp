#pragma once

#include "weylbott/root_datum.hpp"

#include <map>
#include <memory>

namespace weylbott {

using WeightMultiset = std::map<Weight, Int>;   // multiplicities > 0
using VirtualCharacter = std::map<Weight, Int>; // arbitrary integer coefficients

// A group, or a Levi subgroup of one, presented by the subset of simple
// roots cutting out its dominant chamber. Characters, dimensions and tensor
// decompositions are all computed relative to such a system; the reductive
// Levi of a maximal parabolic is the full weight lattice with the marked
// node's wall removed.
class WeightSystem {
public:
    static const WeightSystem& full(const RootDatum& d);
    static const WeightSystem& levi(const ParabolicDatum& p);

    const RootDatum& datum() const { return *datum_; }
    const std::vector<int>& walls() const { return walls_; }
    const std::vector<Weight>& positive_roots() const { return positives_; }
    const Weight& rho() const { return rho_; }
    const std::string& key() const { return key_; }

    bool is_dominant(const Weight& w) const { return datum_->is_dominant(w, walls_); }
    Dominantization dominantize(const Weight& w) const { return datum_->dominantize(w, walls_); }
    std::vector<Weight> orbit(const Weight& w) const { return datum_->orbit(w, walls_); }

    const std::vector<std::vector<long>>& positives_scaled() const { return positives_scaled_; }
    const std::vector<long>& rho_scaled() const { return rho_scaled_; }

private:
    WeightSystem(const RootDatum& d, std::vector<int> walls, std::vector<Weight> positives,
                 std::string key);

    const RootDatum* datum_;
    std::vector<int> walls_;
    std::vector<Weight> positives_;
    Weight rho_;
    std::string key_;
    std::vector<std::vector<long>> positives_scaled_;
    std::vector<long> rho_scaled_;
};

using ScaledMults = std::map<std::vector<long>, Int>;

// Dominant part of the weight system of V^hw, computed by Freudenthal's
// recursion in scaled integer coordinates. The full character is the
// W-orbit expansion of this data.
class DominantCharacter {
public:
    const WeightSystem& system() const { return *system_; }
    const Weight& highest_weight() const { return hw_; }
    const ScaledMults& mults() const { return mults_; }
    Int multiplicity_scaled(const std::vector<long>& w) const; // dominantizes first
    const Int& dim() const { return dim_; }

private:
    friend const DominantCharacter& dominant_character(const WeightSystem&, const Weight&);
    const WeightSystem* system_ = nullptr;
    Weight hw_;
    ScaledMults mults_;
    Int dim_ = 0; // Weyl dimension formula
};

// Full weight system of an irreducible highest-weight representation.
class Character {
public:
    const WeightSystem& system() const { return *system_; }
    const Weight& highest_weight() const { return hw_; }
    const std::vector<std::pair<Weight, Int>>& dominant_entries() const { return dominant_; }
    const WeightMultiset& entries() const { return entries_; }
    const ScaledMults& entries_scaled() const { return scaled_; }
    const Int& mass() const { return mass_; }
    Int multiplicity(const Weight& w) const;

private:
    friend const Character& irreducible_character(const WeightSystem&, const Weight&);
    const WeightSystem* system_ = nullptr;
    Weight hw_;
    std::vector<std::pair<Weight, Int>> dominant_;
    WeightMultiset entries_;
    ScaledMults scaled_;
    Int mass_ = 0;
};

// Formal integer combination of dominant highest weights.
struct Decomposition {
    std::map<Weight, Int> terms;
    bool virtual_allowed = false;

    Int total_dimension(const WeightSystem& sys) const;
    bool operator==(const Decomposition& o) const { return terms == o.terms; }
};

// Freudenthal multiplicities on the dominant cone; cached per (system, hw).
// Throws std::invalid_argument if hw is not dominant for the system.
const DominantCharacter& dominant_character(const WeightSystem& sys, const Weight& hw);

// Full weight system (orbit expansion); cached. Prefer dominant_character
// for large representations.
const Character& irreducible_character(const WeightSystem& sys, const Weight& hw);

// Weyl dimension formula, evaluated exactly.
Int dimension(const WeightSystem& sys, const Weight& hw);

// Klimyk tensor decomposition. The weight system of the factor of smaller
// dimension is enumerated; the result is independent of the choice.
Decomposition tensor_decompose(const WeightSystem& sys, const Weight& a, const Weight& b);

// Independent tensor oracle: convolves the two characters on the dominant
// cone and peels greedily.
Decomposition tensor_by_peeling(const WeightSystem& sys, const Weight& a, const Weight& b);

// Adams operation: scales every weight by k, keeping multiplicities.
VirtualCharacter adams(const Character& chi, long k);

VirtualCharacter multiset_product(const VirtualCharacter& a, const VirtualCharacter& b);

// Newton recursion for the full character of Lambda^k / S^k of V^hw.
VirtualCharacter power_character(const WeightSystem& sys, const Weight& hw, long k, bool exterior);

Decomposition exterior_power(const WeightSystem& sys, const Weight& hw, long k);
Decomposition symmetric_power(const WeightSystem& sys, const Weight& hw, long k);

// Greedy peeling of a W-invariant virtual character into irreducibles:
// repeatedly removes the character of the remaining dominant weight of
// maximal height. Only the dominant part of the input is consulted. Throws
// std::domain_error if a negative multiplicity appears.
Decomposition peel(const WeightSystem& sys, const VirtualCharacter& chi);

// Linear map of weight lattices given by the images of the source
// fundamental weights, as used for restriction to a subgroup sharing the
// maximal torus.
struct WeightMap {
    const RootDatum* source = nullptr;
    const RootDatum* target = nullptr;
    std::vector<Weight> images;

    Weight apply(const Weight& w) const;
    WeightMap then(const WeightMap& next) const;
};

// Branching: pushes the full character through the map and peels over the
// target. Throws std::domain_error on non-integral images or failed peeling.
Decomposition restrict_representation(const WeightSystem& src, const Weight& hw,
                                      const WeightMap& map, const WeightSystem& tgt);
Decomposition restrict_character(const Character& chi, const WeightMap& map,
                                 const WeightSystem& tgt);

// The built-in restriction maps between F4, B4 and D4 in their common
// Bourbaki realization (identity on the ambient space).
const WeightMap& restriction_map_f4_b4();
const WeightMap& restriction_map_f4_d4();
const WeightMap& restriction_map_b4_d4();

std::string decomposition_str(const WeightSystem& sys, const Decomposition& d);

} // namespace weylbott
