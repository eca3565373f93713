#pragma once

#include "sdc/complex.hpp"
#include "sdc/rational.hpp"
#include "sdc/subdivision.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace sdc {

inline constexpr std::size_t kDefaultPairBudget = 1'000'000;

struct GeometricComplex {
    SimplicialComplex complex;
    std::map<Vertex, Point> coords;
    std::size_t ambient_dim = 0;
    // False when the pairwise intersection check was skipped for size.
    bool intersections_verified = false;

    const Point& at(Vertex v) const;
    std::vector<Point> points(const Face& f) const;
};

/// Builds and validates. Throws InputError when a face is affinely dependent,
/// a coordinate is missing or has the wrong length, or two facets meet
/// improperly. Pair checks above `pair_budget` are skipped and flagged.
GeometricComplex make_geometric(SimplicialComplex c, std::map<Vertex, Point> coords,
                                std::size_t pair_budget = kDefaultPairBudget);

/// H = {x : <x, normal> = offset}.
struct Hyperplane {
    Point normal;
    Rational offset;

    /// <x, normal> - offset.
    Rational eval(const Point& x) const;
    int side(const Point& x) const { return sign(eval(x)); }
};

bool is_generic_direction(const Point& nu, const GeometricComplex& gc);

/// Deterministic in `seed`; the returned direction passes is_generic_direction.
Point perturb_to_generic(const GeometricComplex& gc, std::uint64_t seed);

/// Inner halfspaces eval(x) >= 0, one per boundary facet.
struct KernelDescription {
    std::vector<Hyperplane> constraints;
    std::optional<Point> witness;   // strictly inside every constraint

    bool empty() const { return !witness.has_value(); }
};

/// Requires a pure d-dimensional pseudomanifold with nonempty boundary in R^d.
KernelDescription kernel(const GeometricComplex& gc);
bool is_star_shaped_with_center(const GeometricComplex& gc, const Point& x);

/// Faces of Lk(v) whose vertices w all satisfy <w - v, nu> < 0. The
/// nu-maximal vertex has its whole link as lower link.
SimplicialComplex lower_link(Vertex v, const GeometricComplex& gc, const Point& nu);

enum class HalfspaceSide { Above, On, Below };

/// Full subcomplex on vertices with eval >= 0, == 0 or <= 0.
SimplicialComplex halfspace_restriction(const SimplicialComplex& c,
                                        const std::map<Vertex, Point>& placement,
                                        const Hyperplane& h, HalfspaceSide side);

struct HullFacet {
    std::vector<std::size_t> points;   // indices into the input, sorted
    Point normal;                      // outward
    Rational offset;                   // <x, normal> <= offset on the hull
};

/// Exact hull for d <= 3. Throws on degenerate span or d > 3.
std::vector<HullFacet> convex_hull_facets(const std::vector<Point>& pts);
Rational hull_volume(const std::vector<Point>& pts);

bool is_convex_complex(const GeometricComplex& gc);

/// A derived subdivision together with a point for each sd-vertex.
struct PlacedSubdivision {
    DerivedComplex sd;
    std::map<Vertex, Point> placement;

    GeometricComplex geometric(std::size_t ambient_dim) const;
};

/// Throws Error("H not generic") if a vertex lies on H.
PlacedSubdivision h_splitting_sd(const GeometricComplex& gc, const Hyperplane& h);
PlacedSubdivision geometric_sd(const GeometricComplex& gc);

} // namespace sdc
