#pragma once

#include "sdc/collapse.hpp"
#include "sdc/geometry.hpp"
#include "sdc/nonevasive.hpp"
#include "sdc/subdivision.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdc {

struct PipelineOptions {
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultSearchBudget;
    // Execution is always single-threaded; the flag is carried for the CLI.
    bool deterministic = true;
    // Number of terms of r_k = 1 - 2^-k tried when realizing a link.
    int realization_steps = 12;
};

/**
 * Result of a pipeline run. `complex` is the complex the certificate speaks
 * about (sd C, sd^m C, or C itself); `labels[i]` is the base face of its
 * vertex i when the complex is a single derived subdivision.
 */
struct PipelineReport {
    std::string theorem;
    OutcomeKind outcome = OutcomeKind::BudgetExhausted;
    SimplicialComplex complex;
    std::vector<Face> labels;
    std::optional<CollapseCertificate> collapse;
    NECert ne;
    int subdivisions = 0;
    std::vector<std::string> log;
    std::size_t cone_dispatches = 0;
    std::size_t link_realizations = 0;   // ladder rung (i)
    std::size_t link_searches = 0;       // ladder rung (ii)
    std::size_t fallbacks = 0;

    bool ok() const { return outcome == OutcomeKind::Certificate; }
};

/// Convex polytope with simplicial boundary, vertices keyed by id.
struct Polytope {
    std::map<Vertex, Point> vertices;
    std::vector<Face> facets;
    std::vector<Hyperplane> planes;   // <x, normal> <= offset on P

    Face cell() const;
    SimplicialComplex boundary() const;
    /// The cell together with every face of the boundary.
    FacePoset poset() const;
};

/// Hull of the given points; ids that are not extreme are dropped. Throws
/// Error("non-simplicial facet") when a facet has more than d vertices.
Polytope polytope_from_points(const std::map<Vertex, Point>& pts);

struct ShellingOrder {
    std::vector<Face> facets;
    Point line_point;
    Point direction;
    std::vector<Rational> crossings;   // parameter of each facet, same order
    std::size_t star_size = 0;         // facets containing mu, shelled first
};

struct ShellingResult {
    ShellingOrder order;
    std::vector<CollapseStep> steps;   // P ↘ St(mu, ∂P) on the face poset
    FacePoset start;
    FacePoset target;
};

/// Exact prefix condition on a facet sequence of a pure simplicial complex.
bool satisfies_shelling_condition(const std::vector<Face>& facets);

ShellingResult bruggesser_mani_shelling(const Polytope& p, const Face& mu, std::uint64_t seed = 0);

/// Carrier of every face of d in the polytope p (as a set of p's vertex ids).
FaceMap<Face> polytope_carriers(const Polytope& p, const GeometricComplex& d);

/// Carrier of every face of d in the simplicial complex c, which d subdivides.
FaceMap<Face> simplicial_carriers(const GeometricComplex& c, const GeometricComplex& d);

struct HudsonResult {
    DerivedComplex sd;
    CollapseCertificate cert;   // sd D ↘ R(sd D, C')
    std::vector<std::string> log;
    std::size_t fallbacks = 0;
};

HudsonResult hudson_transfer(const FacePoset& c, const std::vector<CollapseStep>& steps,
                             const SimplicialComplex& d, const FaceMap<Face>& carrier,
                             const PipelineOptions& opts = {});

struct BoundaryCollapse {
    DerivedComplex sd;
    Face removed;                // F, a facet of sd ∂C
    CollapseCertificate cert;    // sd C ↘ sd ∂C - F
    std::map<Vertex, std::size_t> order_rank;   // derived-order rank of each sd vertex
    std::vector<std::string> log;
    std::size_t cone_dispatches = 0;
    std::size_t link_searches = 0;
    std::size_t fallbacks = 0;
};

BoundaryCollapse convex_boundary_collapse(const GeometricComplex& gc, const PipelineOptions& opts = {});

/// sd C - sigma ↘ sd ∂C for a facet sigma of sd C, by budgeted search.
SearchOutcome boundary_collapse_minus_facet(const DerivedComplex& s, const Face& sigma,
                                            const std::map<Vertex, std::size_t>& vertex_rank,
                                            const PipelineOptions& opts = {});

PipelineReport convex_collapse_pipeline(const GeometricComplex& gc, const PipelineOptions& opts = {});
PipelineReport star_shaped_ne_pipeline(const GeometricComplex& gc, const PipelineOptions& opts = {});

} // namespace sdc
