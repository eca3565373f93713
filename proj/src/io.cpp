#include "sdc/io.hpp"

#include "sdc/error.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace sdc {

namespace {

Json point_to_json(const Point& p)
{
    Json a = Json::array();
    for (const auto& q : p)
        a.push_back(format_rational(q));
    return a;
}

Point point_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("coordinates must be an array of \"p/q\" strings");
    Point p;
    for (const auto& x : j) {
        if (!x.is_string())
            throw InputError("coordinate entries must be \"p/q\" strings");
        p.push_back(parse_rational(x.get<std::string>()));
    }
    return p;
}

Json face_to_json(const Face& f)
{
    return Json(std::vector<int>(f.begin(), f.end()));
}

Face face_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("face must be an array of vertex ids");
    std::vector<Vertex> vs;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw InputError("vertex ids must be integers");
        vs.push_back(x.get<Vertex>());
    }
    Face f = make_face(vs);
    if (f.size() != vs.size())
        throw InputError("face " + to_string(f) + " repeats a vertex");
    return f;
}

void expect_header(const Json& j, const std::string& format)
{
    if (!j.is_object())
        throw InputError("expected a JSON object");
    if (j.contains("format") && j["format"] != format)
        throw InputError("expected format " + format);
    if (j.contains("version") && j["version"] != kFormatVersion)
        throw InputError("unsupported format version");
}

} // namespace

GeometricComplex ComplexFile::to_geometric() const
{
    if (!geometric())
        throw InputError("complex has no coordinates");
    return make_geometric(complex, coords);
}

Json to_json(const ComplexFile& f)
{
    Json j;
    j["format"] = "sdc-complex";
    j["version"] = kFormatVersion;
    Json vs = Json::array();
    for (Vertex v : f.complex.vertices()) {
        Json rec;
        rec["id"] = v;
        if (f.geometric())
            rec["coords"] = point_to_json(f.coords.at(v));
        vs.push_back(rec);
    }
    j["vertices"] = vs;
    j["facets"] = facets_to_json(f.complex);
    return j;
}

ComplexFile complex_from_json(const Json& j)
{
    expect_header(j, "sdc-complex");
    if (!j.contains("facets"))
        throw InputError("complex file has no facets");
    ComplexFile out;
    std::set<Vertex> declared;
    bool any_coords = false, all_coords = true;
    if (j.contains("vertices")) {
        for (const auto& rec : j["vertices"]) {
            if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_number_integer())
                throw InputError("vertex record needs an integer id");
            Vertex v = rec["id"].get<Vertex>();
            if (!declared.insert(v).second)
                throw InputError("duplicate vertex id " + std::to_string(v));
            if (rec.contains("coords")) {
                any_coords = true;
                out.coords[v] = point_from_json(rec["coords"]);
            } else {
                all_coords = false;
            }
        }
    }
    if (any_coords && !all_coords)
        throw InputError("coordinates given for only some vertices");
    std::vector<std::vector<Vertex>> lists;
    for (const auto& f : j["facets"]) {
        Face face = face_from_json(f);
        if (face.empty())
            throw InputError("empty facet");
        for (Vertex v : face)
            if (j.contains("vertices") && !declared.count(v))
                throw InputError("facet " + to_string(face) + " references unknown vertex " + std::to_string(v));
        lists.push_back(face);
    }
    out.complex = lists.empty() ? SimplicialComplex() : SimplicialComplex::from_facets(lists);
    for (Vertex v : declared)
        if (!out.complex.has_vertex(v))
            throw InputError("vertex " + std::to_string(v) + " lies in no facet");
    return out;
}

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

ComplexFile read_complex(const std::string& path)
{
    try {
        return complex_from_json(read_json(path));
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string complex_hash(const SimplicialComplex& c)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& f : c.facets()) {
        mix(f.size());
        for (Vertex v : f)
            mix(static_cast<std::uint32_t>(v));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json facets_to_json(const SimplicialComplex& c)
{
    Json a = Json::array();
    for (const auto& f : c.facets())
        a.push_back(face_to_json(f));
    return a;
}

SimplicialComplex facets_from_json(const Json& j)
{
    std::vector<std::vector<Vertex>> lists;
    for (const auto& f : j)
        lists.push_back(face_from_json(f));
    return lists.empty() ? SimplicialComplex() : SimplicialComplex::from_facets(lists);
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

Json certificate_header(const std::string& kind, const SimplicialComplex& c)
{
    Json j;
    j["format"] = "sdc-certificate";
    j["version"] = kFormatVersion;
    j["kind"] = kind;
    j["complex"] = facets_to_json(c);
    j["complex_hash"] = complex_hash(c);
    return j;
}

Json steps_to_json(const std::vector<CollapseStep>& steps)
{
    Json a = Json::array();
    for (const auto& s : steps)
        a.push_back(Json::array({face_to_json(s.free_face), face_to_json(s.coface)}));
    return a;
}

std::vector<CollapseStep> steps_from_json(const Json& j)
{
    std::vector<CollapseStep> out;
    for (const auto& s : j) {
        if (!s.is_array() || s.size() != 2)
            throw InputError("collapse step must be a [free, coface] pair");
        out.push_back({face_from_json(s[0]), face_from_json(s[1])});
    }
    return out;
}

// Post-order node table; children precede parents, shared subtrees appear once.
Json ne_tree_to_json(const NECert& root)
{
    Json nodes = Json::array();
    std::map<const NECertificate*, std::size_t> index;
    std::vector<std::pair<const NECertificate*, bool>> stack{{root.get(), false}};
    while (!stack.empty()) {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        if (index.count(n))
            continue;
        if (n->is_point() || expanded) {
            Json rec;
            rec["v"] = n->v;
            if (!n->is_point()) {
                rec["link"] = index.at(n->link.get());
                rec["deletion"] = index.at(n->deletion.get());
            }
            index[n] = nodes.size();
            nodes.push_back(rec);
            continue;
        }
        stack.push_back({n, true});
        stack.push_back({n->deletion.get(), false});
        stack.push_back({n->link.get(), false});
    }
    Json j;
    j["nodes"] = nodes;
    j["root"] = index.at(root.get());
    return j;
}

NECert ne_tree_from_json(const Json& j)
{
    const auto& nodes = j.at("nodes");
    std::vector<NECert> built;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& rec = nodes[i];
        Vertex v = rec.at("v").get<Vertex>();
        if (!rec.contains("link")) {
            built.push_back(NECertificate::point(v));
            continue;
        }
        auto l = rec.at("link").get<std::size_t>();
        auto d = rec.at("deletion").get<std::size_t>();
        if (l >= i || d >= i)
            throw InputError("NE node refers forward");
        built.push_back(NECertificate::node(v, built[l], built[d]));
    }
    auto root = j.at("root").get<std::size_t>();
    if (root >= built.size())
        throw InputError("NE root out of range");
    return built[root];
}

} // namespace

Json collapse_to_json(const SimplicialComplex& c, const CollapseCertificate& cert)
{
    Json j = certificate_header("collapse", c);
    j["steps"] = steps_to_json(cert.steps);
    j["target"] = facets_to_json(cert.target);
    return j;
}

Json ne_to_json(const SimplicialComplex& c, const NECert& cert)
{
    Json j = certificate_header("ne", c);
    j["tree"] = ne_tree_to_json(cert);
    return j;
}

Json ne_steps_to_json(const NEStepSequence& seq)
{
    Json j = certificate_header("ne-steps", seq.start);
    Json steps = Json::array();
    for (const auto& s : seq.steps) {
        Json rec;
        rec["v"] = s.v;
        rec["link"] = ne_tree_to_json(s.link_cert);
        steps.push_back(rec);
    }
    j["steps"] = steps;
    j["final"] = facets_to_json(seq.final_complex);
    return j;
}

Json shelling_to_json(const Polytope& p, const ShellingResult& r)
{
    SimplicialComplex bd = p.boundary();
    Json j = certificate_header("shelling", bd);
    Json vs = Json::array();
    for (const auto& [v, x] : p.vertices)
        vs.push_back({{"id", v}, {"coords", point_to_json(x)}});
    j["polytope_vertices"] = vs;
    Json order = Json::array();
    for (const auto& f : r.order.facets)
        order.push_back(face_to_json(f));
    j["order"] = order;
    j["line_point"] = point_to_json(r.order.line_point);
    j["direction"] = point_to_json(r.order.direction);
    j["crossings"] = point_to_json(r.order.crossings);
    j["star_size"] = r.order.star_size;
    j["steps"] = steps_to_json(r.steps);
    Json target = Json::array();
    for (const auto& f : r.target.faces())
        target.push_back(face_to_json(f));
    j["target"] = target;
    return j;
}

Json report_to_json(const PipelineReport& r)
{
    Json j;
    if (r.ok() && r.collapse)
        j = collapse_to_json(r.complex, *r.collapse);
    else if (r.ok() && r.ne)
        j = ne_to_json(r.complex, r.ne);
    else
        j = certificate_header("none", r.complex);
    Json rep;
    rep["theorem"] = r.theorem;
    rep["outcome"] = to_string(r.outcome);
    rep["subdivisions"] = r.subdivisions;
    rep["log"] = r.log;
    rep["cone_dispatches"] = r.cone_dispatches;
    rep["link_realizations"] = r.link_realizations;
    rep["link_searches"] = r.link_searches;
    rep["fallbacks"] = r.fallbacks;
    Json labels = Json::array();
    for (const auto& l : r.labels)
        labels.push_back(face_to_json(l));
    rep["labels"] = labels;
    j["report"] = rep;
    return j;
}

Json boundary_to_json(const BoundaryCollapse& b)
{
    Json j = collapse_to_json(b.sd.complex, b.cert);
    Json rep;
    rep["theorem"] = "boundary";
    rep["removed"] = face_to_json(b.removed);
    rep["log"] = b.log;
    rep["cone_dispatches"] = b.cone_dispatches;
    rep["link_searches"] = b.link_searches;
    rep["fallbacks"] = b.fallbacks;
    j["report"] = rep;
    return j;
}

Json hudson_to_json(const HudsonResult& h)
{
    Json j = collapse_to_json(h.sd.complex, h.cert);
    Json rep;
    rep["theorem"] = "hudson";
    rep["log"] = h.log;
    rep["fallbacks"] = h.fallbacks;
    j["report"] = rep;
    return j;
}

CollapseCertificate collapse_from_json(const Json& j)
{
    CollapseCertificate c;
    c.steps = steps_from_json(j.at("steps"));
    c.target = facets_from_json(j.at("target"));
    return c;
}

NECert ne_from_json(const Json& j)
{
    return ne_tree_from_json(j.at("tree"));
}

NEStepSequence ne_steps_from_json(const Json& j)
{
    NEStepSequence seq;
    seq.start = facets_from_json(j.at("complex"));
    for (const auto& rec : j.at("steps"))
        seq.steps.push_back({rec.at("v").get<Vertex>(), ne_tree_from_json(rec.at("link"))});
    seq.final_complex = facets_from_json(j.at("final"));
    return seq;
}

namespace {

CheckResult check_shelling(const Json& j)
{
    CheckResult out{false, "shelling", ""};
    std::map<Vertex, Point> pts;
    for (const auto& rec : j.at("polytope_vertices"))
        pts[rec.at("id").get<Vertex>()] = point_from_json(rec.at("coords"));
    Polytope p = polytope_from_points(pts);
    if (!(p.boundary() == facets_from_json(j.at("complex")))) {
        out.message = "recorded boundary differs from the hull of the vertices";
        return out;
    }
    std::vector<Face> order;
    for (const auto& f : j.at("order"))
        order.push_back(face_from_json(f));
    std::vector<Face> sorted_order = order;
    std::sort(sorted_order.begin(), sorted_order.end());
    std::vector<Face> facets = p.boundary().facets();
    if (sorted_order != facets) {
        out.message = "order is not a permutation of the facets";
        return out;
    }
    if (!satisfies_shelling_condition(order)) {
        out.message = "shelling condition fails";
        return out;
    }
    // The recorded line must induce the recorded order.
    Point c = point_from_json(j.at("line_point"));
    Point dir = point_from_json(j.at("direction"));
    std::vector<std::pair<Rational, Face>> pos, neg;
    for (std::size_t f = 0; f < p.facets.size(); ++f) {
        Rational den = dot(dir, p.planes[f].normal);
        if (den == 0) {
            out.message = "line parallel to a facet";
            return out;
        }
        Rational t = (p.planes[f].offset - dot(c, p.planes[f].normal)) / den;
        (t > 0 ? pos : neg).emplace_back(t, p.facets[f]);
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    pos.insert(pos.end(), neg.begin(), neg.end());
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (pos[i].second != order[i] || (i > 0 && pos[i].first == pos[i - 1].first)) {
            out.message = "line does not induce the recorded order";
            return out;
        }
    FacePoset target;
    for (const auto& f : j.at("target"))
        target.add(face_from_json(f));
    auto v = verify_collapse(p.poset(), steps_from_json(j.at("steps")), target);
    out.ok = v.ok;
    out.message = v.ok ? "ok" : v.message;
    return out;
}

} // namespace

CheckResult check_certificate(const Json& j)
{
    CheckResult out;
    try {
        expect_header(j, "sdc-certificate");
        out.kind = j.at("kind").get<std::string>();
        SimplicialComplex c = facets_from_json(j.at("complex"));
        if (complex_hash(c) != j.at("complex_hash").get<std::string>()) {
            out.message = "complex hash mismatch";
            return out;
        }
        if (out.kind == "collapse") {
            auto v = verify_collapse(c, collapse_from_json(j));
            out.ok = v.ok;
            out.message = v.ok ? "ok" : v.message;
        } else if (out.kind == "ne") {
            auto v = verify_ne(c, ne_from_json(j));
            out.ok = v.ok;
            out.message = v.ok ? "ok" : v.message;
        } else if (out.kind == "ne-steps") {
            auto v = verify_ne_steps(ne_steps_from_json(j));
            out.ok = v.ok;
            out.message = v.ok ? "ok" : v.message;
        } else if (out.kind == "shelling") {
            return check_shelling(j);
        } else {
            out.message = "no certificate in file (kind " + out.kind + ")";
        }
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed certificate: ") + e.what());
    }
    return out;
}

std::string to_off(const ComplexFile& f)
{
    if (!f.geometric())
        throw InputError("OFF export needs coordinates");
    const auto& c = f.complex;
    std::vector<Face> polys = c.dim() >= 2 ? c.faces(2) : c.faces(1);
    std::map<Vertex, std::size_t> index;
    std::ostringstream out;
    out << "OFF\n";
    out << "# exact coordinates follow as comments; decimal columns are approximate\n";
    for (Vertex v : c.vertices()) {
        out << "# v " << v;
        for (const auto& q : f.coords.at(v))
            out << ' ' << format_rational(q);
        out << '\n';
    }
    out << c.num_vertices() << ' ' << polys.size() << " 0\n";
    for (Vertex v : c.vertices()) {
        index[v] = index.size();
        const Point& p = f.coords.at(v);
        for (std::size_t k = 0; k < 3; ++k) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.9g", k < p.size() ? p[k].get_d() : 0.0);
            out << (k ? " " : "") << buf;
        }
        out << '\n';
    }
    for (const auto& poly : polys) {
        out << poly.size();
        for (Vertex v : poly)
            out << ' ' << index.at(v);
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Generators

namespace {

ComplexFile make_file(const std::vector<std::vector<Vertex>>& facets, std::map<Vertex, Point> coords = {})
{
    ComplexFile out;
    out.complex = SimplicialComplex::from_facets(facets);
    out.coords = std::move(coords);
    return out;
}

std::map<Vertex, Point> standard_simplex_coords(int d)
{
    std::map<Vertex, Point> coords;
    for (int i = 0; i <= d; ++i) {
        Point p(static_cast<std::size_t>(d), Rational(0));
        if (i > 0)
            p[static_cast<std::size_t>(i - 1)] = 1;
        coords[i + 1] = p;
    }
    return coords;
}

ComplexFile gen_simplex(int d)
{
    if (d < 1)
        throw InputError("simplex needs d >= 1");
    std::vector<Vertex> f;
    for (int i = 1; i <= d + 1; ++i)
        f.push_back(i);
    return make_file({f}, standard_simplex_coords(d));
}

ComplexFile gen_boundary_simplex(int d)
{
    if (d < 1)
        throw InputError("boundary-simplex needs d >= 1");
    std::vector<std::vector<Vertex>> facets;
    for (int skip = 1; skip <= d + 1; ++skip) {
        std::vector<Vertex> f;
        for (int i = 1; i <= d + 1; ++i)
            if (i != skip)
                f.push_back(i);
        facets.push_back(f);
    }
    return make_file(facets, standard_simplex_coords(d));
}

ComplexFile gen_sd_iterate(int d, int m)
{
    if (m < 0)
        throw InputError("sd-iterate needs m >= 0");
    GeometricComplex g = gen_simplex(d).to_geometric();
    for (int k = 0; k < m; ++k)
        g = geometric_sd(g).geometric(static_cast<std::size_t>(d));
    ComplexFile out;
    out.complex = g.complex;
    out.coords = g.coords;
    return out;
}

ComplexFile gen_path(int n)
{
    if (n < 1)
        throw InputError("path needs n >= 1");
    std::vector<std::vector<Vertex>> facets;
    std::map<Vertex, Point> coords;
    for (int i = 1; i <= n; ++i) {
        coords[i] = Point{Rational(i - 1)};
        if (i > 1)
            facets.push_back({i - 1, i});
    }
    if (n == 1)
        facets.push_back({1});
    return make_file(facets, coords);
}

ComplexFile gen_dunce_hat()
{
    return make_file({{1, 2, 4}, {1, 2, 7}, {1, 2, 8}, {1, 3, 4}, {1, 3, 5}, {1, 3, 6}, {1, 5, 6}, {1, 7, 8}, {2, 3, 5},
                      {2, 3, 7}, {2, 3, 8}, {2, 4, 5}, {3, 4, 8}, {3, 6, 7}, {4, 5, 6}, {4, 6, 8}, {6, 7, 8}});
}

// Cubical Bing's house in the box [0,5]x[0,3]x[0,4], each unit square cut
// along a diagonal. The middle floor sits at z = 2; one tube runs from the
// bottom into the upper room, the other from the top into the lower room,
// and each room has a wall joining its tube to the outside.
ComplexFile gen_bing_house()
{
    std::set<std::vector<int>> squares;   // (axis, a, b, c): unit square normal to axis at offset a, lower corner (b, c)
    auto sheet = [&](int axis, int at, int lo1, int hi1, int lo2, int hi2, auto skip) {
        for (int u = lo1; u < hi1; ++u)
            for (int w = lo2; w < hi2; ++w)
                if (!skip(u, w))
                    squares.insert({axis, at, u, w});
    };
    auto none = [](int, int) { return false; };
    // Outer walls. Axis 0: x = const, (y, z); axis 1: y = const, (x, z); axis 2: z = const, (x, y).
    sheet(0, 0, 0, 3, 0, 4, none);
    sheet(0, 5, 0, 3, 0, 4, none);
    sheet(1, 0, 0, 5, 0, 4, none);
    sheet(1, 3, 0, 5, 0, 4, none);
    sheet(2, 0, 0, 5, 0, 3, [](int x, int y) { return x == 1 && y == 1; });
    sheet(2, 4, 0, 5, 0, 3, [](int x, int y) { return x == 3 && y == 1; });
    sheet(2, 2, 0, 5, 0, 3, [](int x, int y) { return (x == 1 || x == 3) && y == 1; });
    // Tubes.
    for (int z = 0; z < 2; ++z) {
        squares.insert({0, 1, 1, z});
        squares.insert({0, 2, 1, z});
        squares.insert({1, 1, 1, z});
        squares.insert({1, 2, 1, z});
    }
    for (int z = 2; z < 4; ++z) {
        squares.insert({0, 3, 1, z});
        squares.insert({0, 4, 1, z});
        squares.insert({1, 1, 3, z});
        squares.insert({1, 2, 3, z});
    }
    // Walls in the plane y = 1.
    sheet(1, 1, 0, 1, 0, 2, none);
    sheet(1, 1, 4, 5, 2, 4, none);

    std::map<std::vector<int>, Vertex> ids;
    auto id = [&](int x, int y, int z) {
        auto it = ids.emplace(std::vector<int>{x, y, z}, 0).first;
        return it;
    };
    std::vector<std::array<std::vector<int>, 4>> quads;
    for (const auto& s : squares) {
        int axis = s[0], at = s[1], u = s[2], w = s[3];
        auto pt = [&](int du, int dw) {
            std::vector<int> p(3);
            p[static_cast<std::size_t>(axis)] = at;
            int a1 = axis == 0 ? 1 : 0;
            int a2 = axis == 2 ? 1 : 2;
            p[static_cast<std::size_t>(a1)] = u + du;
            p[static_cast<std::size_t>(a2)] = w + dw;
            return p;
        };
        quads.push_back({pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)});
        for (const auto& p : quads.back())
            id(p[0], p[1], p[2]);
    }
    Vertex next = 0;
    std::map<Vertex, Point> coords;
    for (auto& [p, v] : ids) {
        v = next++;
        coords[v] = Point{Rational(p[0]), Rational(p[1]), Rational(p[2])};
    }
    std::vector<std::vector<Vertex>> facets;
    for (const auto& q : quads) {
        facets.push_back({ids.at(q[0]), ids.at(q[1]), ids.at(q[2])});
        facets.push_back({ids.at(q[0]), ids.at(q[2]), ids.at(q[3])});
    }
    return make_file(facets, coords);
}

Rational rational_near(double x, long den)
{
    Rational q(static_cast<long>(std::llround(x * static_cast<double>(den))), den);
    q.canonicalize();
    return q;
}

ComplexFile gen_star_polygon(int n, const Rational& ratio)
{
    if (n < 3)
        throw InputError("star-polygon needs n >= 3");
    if (ratio <= 1)
        throw InputError("star-polygon needs ratio > 1");
    // Inner vertices on the unit circle via t -> ((1-t^2), 2t)/(1+t^2).
    const double pi = std::acos(-1.0);
    std::map<Vertex, Point> coords;
    for (int i = 0; i < n; ++i) {
        double theta = 2 * pi * (i + 0.25) / n;
        Rational t = rational_near(std::tan(theta / 2), 64);
        Rational den = 1 + t * t;
        coords[i] = Point{(1 - t * t) / den, 2 * t / den};
    }
    std::vector<std::vector<Vertex>> facets;
    for (int i = 1; i + 1 < n; ++i)
        facets.push_back({0, i, i + 1});
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        Point mid = Rational(1, 2) * (coords[i] + coords[j]);
        coords[n + i] = ratio * mid;
        facets.push_back({i, j, n + i});
    }
    return make_file(facets, coords);
}

ComplexFile gen_octahedron_solid()
{
    std::map<Vertex, Point> coords;
    coords[0] = Point{0, 0, 0};
    for (int axis = 0; axis < 3; ++axis)
        for (int s = 0; s < 2; ++s) {
            Point p(3, Rational(0));
            p[static_cast<std::size_t>(axis)] = s == 0 ? 1 : -1;
            coords[1 + 2 * axis + s] = p;
        }
    std::vector<std::vector<Vertex>> facets;
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz)
                facets.push_back({0, 1 + sx, 3 + sy, 5 + sz});
    return make_file(facets, coords);
}

ComplexFile gen_spiky_octahedron(int spikes, const Rational& ratio)
{
    if (spikes < 1 || spikes > 8)
        throw InputError("spiky-octahedron needs 1 <= spikes <= 8");
    if (ratio <= 3)
        throw InputError("spiky-octahedron needs ratio > 3");
    ComplexFile base = gen_octahedron_solid();
    std::map<Vertex, Point> coords;
    for (auto& [v, p] : base.coords)
        coords[v] = Rational(2) * p;
    std::vector<std::vector<Vertex>> facets;
    int k = 0;
    Vertex next = 7;
    for (const auto& f : base.complex.facets()) {
        facets.push_back(f);
        if (k++ >= spikes)
            continue;
        Face outer(f.begin() + 1, f.end());
        Point apex = Rational(ratio) * barycenter({coords[outer[0]], coords[outer[1]], coords[outer[2]]});
        coords[next] = apex;
        facets.push_back({outer[0], outer[1], outer[2], next});
        ++next;
    }
    return make_file(facets, coords);
}

Point cross3(const Point& a, const Point& b)
{
    return Point{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

ComplexFile gen_stacked(int n, std::uint64_t seed)
{
    if (n < 4)
        throw InputError("stacked-3-polytope needs n >= 4");
    std::mt19937_64 rng(seed);
    std::map<Vertex, Point> coords;
    coords[0] = Point{0, 0, 0};
    coords[1] = Point{6, 0, 0};
    coords[2] = Point{0, 6, 0};
    coords[3] = Point{0, 0, 6};
    std::vector<std::vector<Vertex>> tets{{0, 1, 2, 3}};
    struct Bd {
        Face face;
        Point normal;   // outward
        Rational offset;
    };
    auto plane = [&](const Face& f, Vertex inside) {
        Point nrm = cross3(coords[f[1]] - coords[f[0]], coords[f[2]] - coords[f[0]]);
        Rational off = dot(nrm, coords[f[0]]);
        if (dot(nrm, coords[inside]) > off) {
            nrm = Rational(-1) * nrm;
            off = -off;
        }
        return Bd{f, nrm, off};
    };
    std::vector<Bd> bd;
    for (Vertex skip = 0; skip < 4; ++skip) {
        Face f;
        for (Vertex v = 0; v < 4; ++v)
            if (v != skip)
                f.push_back(v);
        bd.push_back(plane(f, skip));
    }
    for (Vertex v = 4; v < n; ++v) {
        std::size_t pick = std::uniform_int_distribution<std::size_t>(0, bd.size() - 1)(rng);
        Bd chosen = bd[pick];
        Point c = barycenter({coords[chosen.face[0]], coords[chosen.face[1]], coords[chosen.face[2]]});
        Rational eps = 1;
        Point q;
        for (;;) {
            q = c + eps * chosen.normal;
            bool ok = true;
            for (std::size_t i = 0; i < bd.size() && ok; ++i)
                if (i != pick && dot(bd[i].normal, q) >= bd[i].offset)
                    ok = false;
            if (ok)
                break;
            eps /= 2;
        }
        coords[v] = q;
        tets.push_back({chosen.face[0], chosen.face[1], chosen.face[2], v});
        bd.erase(bd.begin() + static_cast<long>(pick));
        for (std::size_t drop = 0; drop < 3; ++drop) {
            Face f{v};
            for (std::size_t i = 0; i < 3; ++i)
                if (i != drop)
                    f.push_back(chosen.face[i]);
            bd.push_back(plane(make_face(f), chosen.face[drop]));
        }
    }
    return make_file(tets, coords);
}

ComplexFile gen_random_collapsible(int n, std::uint64_t seed)
{
    if (n < 1)
        throw InputError("random-collapsible needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Face> facets{{0}};
    auto faces_of = [&]() { return SimplicialComplex::from_facets(facets).all_faces(); };
    for (Vertex v = 1; v < n; ++v) {
        std::vector<Face> small;
        for (auto& f : faces_of())
            if (f.size() <= 2)
                small.push_back(f);
        const Face& rho = small[std::uniform_int_distribution<std::size_t>(0, small.size() - 1)(rng)];
        facets.push_back(with_vertex(rho, v));
    }
    // Elementary expansions: a triangle whose edges are all present but one.
    for (int tries = 0; tries < 2 * n && n >= 3; ++tries) {
        SimplicialComplex k = SimplicialComplex::from_facets(facets);
        std::uniform_int_distribution<Vertex> pick(0, n - 1);
        Face t = make_face({pick(rng), pick(rng), pick(rng)});
        if (t.size() != 3 || k.contains(t))
            continue;
        int missing = 0;
        for (Vertex x : t)
            missing += !k.contains(without_vertex(t, x));
        if (missing == 1)
            facets.push_back(t);
    }
    return make_file(facets);
}

} // namespace

ComplexFile generate(const std::string& name, const GenParams& p, std::uint64_t seed)
{
    if (name == "simplex")
        return gen_simplex(p.d);
    if (name == "boundary-simplex")
        return gen_boundary_simplex(p.d);
    if (name == "sd-iterate")
        return gen_sd_iterate(p.d, p.m);
    if (name == "path")
        return gen_path(p.n);
    if (name == "dunce-hat")
        return gen_dunce_hat();
    if (name == "bing-house")
        return gen_bing_house();
    if (name == "star-polygon")
        return gen_star_polygon(p.n, p.ratio.value_or(Rational(3)));
    if (name == "octahedron-solid")
        return gen_octahedron_solid();
    if (name == "spiky-octahedron")
        return gen_spiky_octahedron(p.spikes, p.ratio.value_or(Rational(4)));
    if (name == "stacked-3-polytope")
        return gen_stacked(p.n, seed);
    if (name == "random-collapsible")
        return gen_random_collapsible(p.n, seed);
    throw InputError("unknown generator '" + name + "'");
}

} // namespace sdc
