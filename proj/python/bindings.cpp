// Python bindings. Complexes and certificates cross the boundary as JSON
// text in the same formats the CLI reads and writes; facet lists cross as
// lists of lists.

#include "sdc/error.hpp"
#include "sdc/io.hpp"
#include "sdc/pipelines.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace sdc;

namespace {

using Facets = std::vector<std::vector<Vertex>>;

SimplicialComplex from_lists(const Facets& facets)
{
    return facets.empty() ? SimplicialComplex() : SimplicialComplex::from_facets(facets);
}

Facets to_lists(const SimplicialComplex& c)
{
    return {c.facets().begin(), c.facets().end()};
}

ComplexFile parse_complex(const std::string& text)
{
    try {
        return complex_from_json(Json::parse(text));
    } catch (const Json::exception& e) {
        throw InputError(e.what());
    }
}

Strategy strategy_of(const std::string& s)
{
    if (s == "greedy")
        return Strategy::Greedy;
    if (s == "backtracking")
        return Strategy::Backtracking;
    if (s == "order-guided")
        return Strategy::OrderGuided;
    throw InputError("unknown strategy '" + s + "'");
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

py::tuple collapse(const Facets& facets, const std::optional<Facets>& target, const std::string& strategy,
                   std::uint64_t budget, std::uint64_t seed)
{
    SimplicialComplex c = from_lists(facets);
    SearchOptions o;
    o.strategy = strategy_of(strategy);
    o.budget = budget;
    o.seed = seed;
    std::optional<SimplicialComplex> t;
    if (target)
        t = from_lists(*target);
    SearchOutcome r;
    {
        py::gil_scoped_release release;
        r = collapse_search(c, t, o);
    }
    py::object cert = py::none();
    if (r.found())
        cert = py::str(dump(collapse_to_json(c, *r.certificate)));
    return py::make_tuple(to_string(r.kind), cert);
}

py::tuple nonevasive(const Facets& facets, std::uint64_t budget)
{
    SimplicialComplex c = from_lists(facets);
    NEOutcome r;
    {
        py::gil_scoped_release release;
        r = is_nonevasive(c, budget);
    }
    py::object cert = py::none();
    if (r.found())
        cert = py::str(dump(ne_to_json(c, r.certificate)));
    return py::make_tuple(to_string(r.kind), cert);
}

py::tuple pipeline(const std::string& theorem, const std::string& complex_json, std::uint64_t seed,
                   std::uint64_t budget, const std::optional<std::string>& subdivision_json)
{
    PipelineOptions opts;
    opts.seed = seed;
    opts.budget = budget;
    GeometricComplex gc = parse_complex(complex_json).to_geometric();
    if (theorem == "convex" || theorem == "star-shaped") {
        PipelineReport r = theorem == "convex" ? convex_collapse_pipeline(gc, opts) : star_shaped_ne_pipeline(gc, opts);
        return py::make_tuple(to_string(r.outcome), dump(report_to_json(r)));
    }
    std::string text;
    if (theorem == "boundary") {
        text = dump(boundary_to_json(convex_boundary_collapse(gc, opts)));
    } else if (theorem == "hudson") {
        if (!subdivision_json)
            throw InputError("hudson needs a subdivision");
        GeometricComplex d = parse_complex(*subdivision_json).to_geometric();
        SearchOptions so;
        so.budget = budget;
        so.seed = seed;
        SearchOutcome s = collapse_search(gc.complex, std::nullopt, so);
        if (!s.found())
            return py::make_tuple(to_string(s.kind), py::none());
        text = dump(hudson_to_json(hudson_transfer(FacePoset::from_complex(gc.complex), s.certificate->steps,
                                                   d.complex, simplicial_carriers(gc, d), opts)));
    } else {
        throw InputError("unknown theorem '" + theorem + "'");
    }
    return py::make_tuple(to_string(OutcomeKind::Certificate), text);
}

} // namespace

PYBIND11_MODULE(_sdc, m)
{
    m.doc() = "Derived subdivisions, collapses and non-evasiveness certificates";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", error.ptr());
    py::register_exception<BudgetExhaustedError>(m, "BudgetExhaustedError", error.ptr());
    py::register_exception<RefutedError>(m, "RefutedError", error.ptr());

    m.attr("DEFAULT_BUDGET") = kDefaultSearchBudget;

    m.def("generate",
          [](const std::string& name, int d, int n, int mm, const std::optional<std::string>& ratio, int spikes,
             std::uint64_t seed) {
              GenParams p;
              p.d = d;
              p.n = n;
              p.m = mm;
              p.spikes = spikes;
              if (ratio)
                  p.ratio = parse_rational(*ratio);
              return dump(to_json(generate(name, p, seed)));
          },
          py::arg("name"), py::arg("d") = 2, py::arg("n") = 5, py::arg("m") = 1, py::arg("ratio") = py::none(),
          py::arg("spikes") = 1, py::arg("seed") = 0);

    m.def("validate", [](const std::string& text) { return dump(to_json(parse_complex(text))); },
          "Parse and re-serialize a complex file; raises InputError when it is malformed.");

    m.def("sd",
          [](const Facets& facets, int mm) {
              IteratedSubdivision it = sd_m(from_lists(facets), mm);
              return py::make_tuple(to_lists(it.complex), it.root_carriers);
          },
          py::arg("facets"), py::arg("m") = 1,
          "Iterated derived subdivision: (facets, carrier of each vertex id).");

    m.def("link", [](const Face& face, const Facets& facets) { return to_lists(link(make_face(face), from_lists(facets))); });
    m.def("free_faces", [](const Facets& facets) { return free_faces(from_lists(facets)); });
    m.def("euler_characteristic", [](const Facets& facets) { return from_lists(facets).euler_characteristic(); });

    m.def("collapse_search", &collapse, py::arg("facets"), py::arg("target") = py::none(),
          py::arg("strategy") = "greedy", py::arg("budget") = kDefaultSearchBudget, py::arg("seed") = 0);
    m.def("is_nonevasive", &nonevasive, py::arg("facets"), py::arg("budget") = kDefaultSearchBudget);

    m.def("pipeline", &pipeline, py::arg("theorem"), py::arg("complex"), py::arg("seed") = 0,
          py::arg("budget") = kDefaultSearchBudget, py::arg("subdivision") = py::none());

    m.def("shell",
          [](const std::string& complex_json, const Face& mu, std::uint64_t seed) {
              ComplexFile f = parse_complex(complex_json);
              if (!f.geometric())
                  throw InputError("shell needs coordinates");
              Polytope p = polytope_from_points(f.coords);
              return dump(shelling_to_json(p, bruggesser_mani_shelling(p, make_face(mu), seed)));
          },
          py::arg("complex"), py::arg("mu"), py::arg("seed") = 0);

    m.def("check_certificate", [](const std::string& text) {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::exception& e) {
            throw InputError(e.what());
        }
        CheckResult r = check_certificate(j);
        return py::make_tuple(r.ok, r.kind, r.message);
    });
}
