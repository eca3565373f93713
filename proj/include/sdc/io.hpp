#pragma once

#include "sdc/collapse.hpp"
#include "sdc/geometry.hpp"
#include "sdc/nonevasive.hpp"
#include "sdc/pipelines.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace sdc {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// A complex as stored on disk. Coordinates are all-or-none.
struct ComplexFile {
    SimplicialComplex complex;
    std::map<Vertex, Point> coords;

    bool geometric() const { return !coords.empty(); }
    /// Validates through make_geometric. Throws InputError without coordinates.
    GeometricComplex to_geometric() const;

    bool operator==(const ComplexFile& o) const { return complex == o.complex && coords == o.coords; }
};

Json to_json(const ComplexFile& f);
/// Throws InputError on malformed rationals, duplicate ids, unknown facet
/// vertices, partial coordinates and version mismatch.
ComplexFile complex_from_json(const Json& j);

Json read_json(const std::string& path);
/// Two-space indented dump with a trailing newline.
void write_json(const std::string& path, const Json& j);
ComplexFile read_complex(const std::string& path);

/// FNV-1a over the sorted facet list, as 16 hex digits.
std::string complex_hash(const SimplicialComplex& c);

Json facets_to_json(const SimplicialComplex& c);
SimplicialComplex facets_from_json(const Json& j);

Json collapse_to_json(const SimplicialComplex& c, const CollapseCertificate& cert);
Json ne_to_json(const SimplicialComplex& c, const NECert& cert);
Json ne_steps_to_json(const NEStepSequence& seq);
Json shelling_to_json(const Polytope& p, const ShellingResult& r);

/// Certificate file for a pipeline run; carries the report as metadata.
Json report_to_json(const PipelineReport& r);
Json boundary_to_json(const BoundaryCollapse& b);
Json hudson_to_json(const HudsonResult& h);

CollapseCertificate collapse_from_json(const Json& j);
NECert ne_from_json(const Json& j);
NEStepSequence ne_steps_from_json(const Json& j);

struct CheckResult {
    bool ok = false;
    std::string kind;
    std::string message;
};

/// Replays any certificate file against the complex embedded in it, after
/// checking the recorded hash.
CheckResult check_certificate(const Json& j);

/// OFF export of the 2-faces (edges for 1-complexes). Exact coordinates are
/// kept as comments; the decimal columns are approximations for viewers.
std::string to_off(const ComplexFile& f);

struct GenParams {
    int d = 2;
    int n = 5;
    int m = 1;
    std::optional<Rational> ratio;   // star-polygon 3, spiky-octahedron 4
    int spikes = 1;
};

/// Corpus generators: simplex, boundary-simplex, sd-iterate, dunce-hat,
/// bing-house, star-polygon, stacked-3-polytope, octahedron-solid,
/// spiky-octahedron, path, random-collapsible. Deterministic in seed.
ComplexFile generate(const std::string& name, const GenParams& params, std::uint64_t seed);

} // namespace sdc
