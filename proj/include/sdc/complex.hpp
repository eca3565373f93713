#pragma once

#include "sdc/error.hpp"
#include "sdc/face.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace sdc {

/// Faces beyond this count are never materialized in the lazy face cache.
inline constexpr std::size_t kFaceCacheLimit = std::size_t{1} << 20;

/**
 * Immutable finite abstract simplicial complex stored by its facets.
 *
 * Facets are kept sorted lexicographically; a complex is empty when it has
 * no facets. Copies share the lazily built face index.
 */
class SimplicialComplex {
public:
    SimplicialComplex();

    /// Builds a complex from arbitrary vertex lists; dominated lists are
    /// absorbed and duplicates removed. Throws on an empty list or a
    /// negative vertex id.
    static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& lists);

    /// Builds from lists already known to be sorted, nonempty and
    /// inclusion-maximal. Only ordering is normalized.
    static SimplicialComplex from_maximal(std::vector<Face> facets);

    /// Downward closure of arbitrary faces (non-maximal ones absorbed).
    static SimplicialComplex generated_by(const std::vector<Face>& faces);

    const std::vector<Face>& facets() const { return facets_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    int dim() const { return dim_; }
    bool empty() const { return facets_.empty(); }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_facets() const { return facets_.size(); }
    bool has_vertex(Vertex v) const;
    bool is_pure() const;

    /// Membership; the empty face belongs to every nonempty complex.
    bool contains(const Face& f) const;

    /// All k-faces, sorted lexicographically. k = -1 yields the empty face
    /// when the complex is nonempty.
    std::vector<Face> faces(int k) const;

    /// All nonempty faces sorted by (dimension, lexicographic).
    std::vector<Face> all_faces() const;
    std::size_t num_faces() const;
    std::vector<std::size_t> f_vector() const;
    long euler_characteristic() const;
    bool is_connected() const;

    bool operator==(const SimplicialComplex& other) const { return facets_ == other.facets_; }
    bool operator!=(const SimplicialComplex& other) const { return !(*this == other); }

private:
    struct FaceCache {
        std::once_flag once;
        std::shared_ptr<const FaceSet> faces;
    };

    void finalize();
    const FaceSet* face_index() const;

    std::vector<Face> facets_;
    std::vector<Vertex> vertices_;
    int dim_ = -1;
    std::shared_ptr<FaceCache> cache_;
};

/// Subcomplex generated by all facets containing sigma.
SimplicialComplex star(const Face& sigma, const SimplicialComplex& c);

/// Faces tau disjoint from sigma with tau ∪ sigma in c. link({}, c) = c.
SimplicialComplex link(const Face& sigma, const SimplicialComplex& c);

/// All faces of c that do not contain sigma (c − σ).
SimplicialComplex delete_face(const SimplicialComplex& c, const Face& sigma);

/// All faces of c containing no face of d, i.e. avoiding every vertex of d.
SimplicialComplex delete_subcomplex(const SimplicialComplex& c, const SimplicialComplex& d);

inline SimplicialComplex delete_vertex(const SimplicialComplex& c, Vertex v)
{
    return delete_face(c, Face{v});
}

/// Full subcomplex on the vertex set w.
SimplicialComplex restriction(const SimplicialComplex& c, const std::vector<Vertex>& w);

/// v ∗ c. Throws if v is already a vertex of c.
SimplicialComplex cone(Vertex v, const SimplicialComplex& c);

/// Subcomplex generated by the codimension-one faces lying in exactly one
/// facet. Throws "boundary undefined" for non-pure input.
SimplicialComplex boundary_complex(const SimplicialComplex& c);

bool is_subcomplex(const SimplicialComplex& d, const SimplicialComplex& c);
SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b);
SimplicialComplex complex_intersection(const SimplicialComplex& a, const SimplicialComplex& b);

/// Applies a vertex relabeling (must be injective on the vertex set).
SimplicialComplex relabel(const SimplicialComplex& c, const std::map<Vertex, Vertex>& map);

/// A vertex lying in every facet, if any (smallest such id).
std::optional<Vertex> cone_apex(const SimplicialComplex& c);

} // namespace sdc
