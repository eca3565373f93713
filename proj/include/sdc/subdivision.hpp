#pragma once

#include "sdc/complex.hpp"

#include <cstddef>
#include <vector>

namespace sdc {

inline constexpr std::size_t kDefaultSubdivisionFacetLimit = 2'000'000;

/**
 * Derived subdivision sd C. Vertex i of `complex` is the barycenter-like
 * vertex of the base face `labels[i]`; facets are the maximal chains of
 * base faces. Ids follow the (dimension, lexicographic) order of labels.
 */
struct DerivedComplex {
    SimplicialComplex base;
    SimplicialComplex complex;
    std::vector<Face> labels;
    FaceMap<Vertex> ids;

    /// sd-vertex of a base face. Throws if the face is not in the base.
    Vertex vertex_of(const Face& base_face) const;

    /// Smallest base face containing an sd face (the largest label in the chain).
    Face carrier(const Face& sd_face) const;

    /// Chain of base faces spanned by an sd face, ordered by inclusion.
    std::vector<Face> chain(const Face& sd_face) const;
};

/// Σ over facets F of (dim F + 1)!.
std::size_t sd_facet_count(const SimplicialComplex& c);

DerivedComplex sd(const SimplicialComplex& c,
                  std::size_t facet_limit = kDefaultSubdivisionFacetLimit);

/// Iterated derived subdivision sd^m C with the per-level data needed to
/// trace any vertex back to its carrier in C.
struct IteratedSubdivision {
    SimplicialComplex base;
    SimplicialComplex complex;
    std::vector<DerivedComplex> levels;   // levels[k] subdivides sd^k C
    std::vector<Face> root_carriers;      // indexed by vertex id of `complex`

    int depth() const { return static_cast<int>(levels.size()); }
    Face carrier(const Face& face) const;

    /// Full subcomplex on vertices whose carrier lies in `sub`; for a
    /// subcomplex sub of C this is sd^m(sub) inside sd^m C.
    SimplicialComplex restrict_to(const SimplicialComplex& sub) const;
};

/// Throws Error("subdivision too large") when the projected facet count of
/// any level exceeds facet_limit.
IteratedSubdivision sd_m(const SimplicialComplex& c, int m,
                         std::size_t facet_limit = kDefaultSubdivisionFacetLimit);

/// N(D, C) as a subcomplex of sd C: union of the stars of the sd-vertices
/// labeled by faces of D.
SimplicialComplex derived_neighborhood(const DerivedComplex& sdc, const SimplicialComplex& d);

/**
 * Total order on the nonempty faces of a complex, extending a seed order on
 * mutually disjoint faces. `seed` and rank 0 are both in deletion order: the
 * first entry is removed first.
 *
 * For every face σ and strict face τ: if τ is the seed element of σ that is
 * deleted last (the ≺-least one), σ precedes τ; otherwise τ precedes σ.
 * Ties in the closure are broken by dimension descending, then lexicographic.
 */
struct DerivedOrder {
    std::vector<Face> seed;
    std::vector<Face> order;   // rank -> face
    FaceMap<std::size_t> rank;

    std::size_t rank_of(const Face& f) const;
};

/// Throws Error("seed order inconsistent") if the generated relation is cyclic.
DerivedOrder derived_order(const SimplicialComplex& c, const std::vector<Face>& seed);

/// True iff `order` satisfies every generating relation for (c, seed).
bool respects_derived_rules(const DerivedOrder& order, const SimplicialComplex& c);

} // namespace sdc
