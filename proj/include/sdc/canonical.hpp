#pragma once

#include "sdc/complex.hpp"

#include <map>
#include <vector>

namespace sdc {

inline constexpr std::size_t kDefaultCanonicalVertexBound = 16;

/// Isomorphism-invariant representative of a complex: vertices relabeled
/// 0..n-1 so that the sorted facet list is minimal among all labelings
/// compatible with the refined vertex partition.
struct CanonicalForm {
    std::vector<Face> facets;
    std::map<Vertex, Vertex> relabeling; // original id -> canonical id

    bool operator==(const CanonicalForm& o) const { return facets == o.facets; }
    bool operator<(const CanonicalForm& o) const { return facets < o.facets; }
};

/// Throws Error("canonicalization too large") above max_vertices.
CanonicalForm canonical_form(const SimplicialComplex& c,
                             std::size_t max_vertices = kDefaultCanonicalVertexBound);

/// Compact string key of the canonical facet list, for memo tables.
std::string canonical_key(const SimplicialComplex& c,
                          std::size_t max_vertices = kDefaultCanonicalVertexBound);

/// Key of the literal facet list (no relabeling).
std::string facet_key(const SimplicialComplex& c);

} // namespace sdc
