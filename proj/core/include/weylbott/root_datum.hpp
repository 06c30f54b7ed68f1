#pragma once

#include "weylbott/weight.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace weylbott {

// Result of the dominantization walk: the dominant chamber representative,
// the number of simple reflections applied, and whether the representative
// lies on a chamber wall.
struct Dominantization {
    Weight dominant;
    long length = 0;
    bool singular = false;
};

// A root system in its Bourbaki realization: roots and weights live in an
// ambient rational Euclidean space carrying the standard (W-invariant)
// scalar product. Immutable once built; shared through the registry.
class RootDatum {
public:
    // cached registry; throws std::invalid_argument for unsupported types
    static const RootDatum& get(char type, int rank);

    char type() const { return type_; }
    int rank() const { return rank_; }
    std::size_t ambient_dim() const { return ambient_dim_; }
    std::string name() const { return std::string(1, type_) + std::to_string(rank_); }

    const std::vector<Weight>& simple_roots() const { return simple_roots_; }
    const std::vector<Weight>& positive_roots() const { return positive_roots_; }
    const std::vector<Weight>& fundamental_weights() const { return fundamental_weights_; }
    const Weight& rho() const { return rho_; }
    const std::vector<std::vector<long>>& cartan_matrix() const { return cartan_; }
    const RatMatrix& gram() const { return gram_; }

    // fundamental coordinate a_i = <w, alpha_i^vee>
    Rat fundamental_coord(const Weight& w, int i) const;
    std::vector<Rat> fundamental_coords(const Weight& w) const;
    Weight from_fundamental(const std::vector<Rat>& a) const;
    Weight from_fundamental_long(const std::vector<long>& a) const;

    // membership in the weight lattice: integral fundamental coordinates and
    // containment in the span of the fundamental weights
    bool is_lattice_weight(const Weight& w) const;

    std::vector<int> all_walls() const;
    bool is_dominant(const Weight& w, const std::vector<int>& walls) const;

    Dominantization dominantize(const Weight& w) const;
    Dominantization dominantize(const Weight& w, const std::vector<int>& walls) const;
    // same walk, optionally accumulating the product of the applied reflections
    Dominantization dominantize_tracked(const Weight& w, const std::vector<int>& walls,
                                        RatMatrix* accumulated) const;

    // orbit of w under the reflections indexed by walls
    std::vector<Weight> orbit(const Weight& w, const std::vector<int>& walls) const;

    Int weyl_order() const;
    static Int weyl_order_of_type(char type, int rank);

    // longest element as a linear map on the ambient space
    const RatMatrix& w0_matrix() const;

    // expansion of v in the simple-root basis, if v lies in their span
    std::optional<std::vector<Rat>> simple_root_coords(const Weight& v) const;

    // Integer fast path: ambient coordinates scaled by `scale()` so that all
    // lattice weights (and rho shifts) become integer vectors. Used by the
    // inner loops of Freudenthal and Klimyk.
    long scale() const { return scale_; }
    std::vector<long> to_scaled(const Weight& w) const;
    Weight from_scaled(const std::vector<long>& v) const;
    const std::vector<std::vector<long>>& simple_roots_scaled() const { return simple_scaled_; }
    // doubled coroot pairing numerator/denominator: 2(w,a)/(a,a) in scaled coords
    long scaled_pairing(const std::vector<long>& w, int simple) const;
    bool scaled_is_dominant(const std::vector<long>& w, const std::vector<int>& walls) const;
    // in-place dominantization; returns reflection count, sets singular
    long scaled_dominantize(std::vector<long>& w, const std::vector<int>& walls,
                            bool* singular = nullptr) const;

private:
    RootDatum() = default;
    static RootDatum build(char type, int rank);
    std::vector<Rat> simple_root_coords_impl(const Weight& v) const;

    char type_ = 0;
    int rank_ = 0;
    std::size_t ambient_dim_ = 0;
    std::vector<Weight> simple_roots_;
    std::vector<Weight> positive_roots_;
    std::vector<Weight> fundamental_weights_;
    Weight rho_;
    std::vector<std::vector<long>> cartan_;
    RatMatrix gram_;
    RatMatrix w0_;
    long scale_ = 2;
    std::vector<std::vector<long>> simple_scaled_;
    std::vector<long> simple_norm_scaled_; // dot of scaled simple root with itself
};

// Connected component of the Levi part of a Dynkin diagram with the marked
// node removed. `nodes` lists the ambient simple-root indices (0-based) in
// the order matching the Bourbaki numbering of the standalone datum.
struct LeviComponent {
    char type = 0;
    int rank = 0;
    std::vector<int> nodes;
    const RootDatum* standalone = nullptr;
};

// Maximal parabolic P_k of a root datum together with the derived Levi data
// used throughout: Levi roots, nilradical, central charge, w_0^L.
class ParabolicDatum {
public:
    // node is 1-based, matching the usual Dynkin diagram labels
    static const ParabolicDatum& get(char type, int rank, int node);

    const RootDatum& ambient() const { return *ambient_; }
    int node() const { return node_; }
    int k_index() const { return node_ - 1; }
    std::string name() const { return ambient_->name() + "/P" + std::to_string(node_); }

    const Weight& omega_k() const { return omega_k_; }
    const std::vector<int>& levi_walls() const { return levi_walls_; }
    const std::vector<Weight>& levi_positive_roots() const { return levi_positive_roots_; }
    const Weight& levi_rho() const { return levi_rho_; }

    const std::vector<LeviComponent>& levi_components() const { return components_; }
    std::string levi_semisimple_type() const;
    Int levi_weyl_order() const;

    struct NilradicalEntry {
        Weight weight;    // negative of a positive root outside the Levi
        long degree;      // coefficient of alpha_k in the root expansion
        bool l_dominant;
    };
    const std::vector<NilradicalEntry>& nilradical() const { return nilradical_; }
    std::size_t dim_gp() const { return nilradical_.size(); }
    long fano_index() const { return fano_index_; }

    Rat central_charge(const Weight& w) const;

    const RatMatrix& w0_levi_matrix() const { return w0_levi_; }
    Weight longest_levi_image(const Weight& w) const { return w0_levi_.apply(w); }

    bool is_levi_dominant(const Weight& w) const;
    Dominantization dominantize_levi(const Weight& w) const;

    // fundamental coordinates of a weight of the semisimple part L', one
    // vector per component, in each component's own numbering
    std::vector<std::vector<Rat>> project_to_components(const Weight& w) const;
    // section of the projection: component fundamental coordinates back to an
    // ambient lattice weight with zero omega_k coordinate
    Weight lift_from_components(const std::vector<std::vector<Rat>>& a) const;

private:
    ParabolicDatum() = default;
    static ParabolicDatum build(const RootDatum& datum, int node);

    const RootDatum* ambient_ = nullptr;
    int node_ = 0;
    Weight omega_k_;
    Rat omega_k_norm2_;
    std::vector<int> levi_walls_;
    std::vector<Weight> levi_positive_roots_;
    Weight levi_rho_;
    std::vector<LeviComponent> components_;
    std::vector<NilradicalEntry> nilradical_;
    long fano_index_ = 0;
    RatMatrix w0_levi_;
};

} // namespace weylbott
