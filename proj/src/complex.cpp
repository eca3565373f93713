#include "sdc/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace sdc {

std::string to_string(const Face& f)
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < f.size(); ++i)
        os << (i ? "," : "") << f[i];
    os << '}';
    return os.str();
}

namespace {

// Keeps the inclusion-maximal members of faces (each sorted, nonempty).
std::vector<Face> maximal_faces(std::vector<Face> faces)
{
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.size() != b.size())
            return a.size() > b.size();
        return a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

    std::vector<Face> kept;
    std::unordered_map<Vertex, std::vector<std::size_t>> by_vertex;
    for (auto& f : faces) {
        if (f.empty())
            continue;
        const std::vector<std::size_t>* best = nullptr;
        bool no_candidates = false;
        for (Vertex v : f) {
            auto it = by_vertex.find(v);
            if (it == by_vertex.end()) {
                no_candidates = true;
                break;
            }
            if (!best || it->second.size() < best->size())
                best = &it->second;
        }
        bool dominated = false;
        if (!no_candidates && best) {
            for (std::size_t id : *best) {
                if (kept[id].size() > f.size() && is_subface(f, kept[id])) {
                    dominated = true;
                    break;
                }
            }
        }
        if (dominated)
            continue;
        std::size_t id = kept.size();
        for (Vertex v : f)
            by_vertex[v].push_back(id);
        kept.push_back(std::move(f));
    }
    return kept;
}

} // namespace

SimplicialComplex::SimplicialComplex() : cache_(std::make_shared<FaceCache>()) {}

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<Vertex>>& lists)
{
    std::vector<Face> faces;
    faces.reserve(lists.size());
    for (const auto& l : lists) {
        if (l.empty())
            throw Error("empty face");
        for (Vertex v : l)
            if (v < 0)
                throw Error("negative vertex id " + std::to_string(v));
        faces.push_back(make_face(l));
    }
    SimplicialComplex c;
    c.facets_ = maximal_faces(std::move(faces));
    c.finalize();
    return c;
}

SimplicialComplex SimplicialComplex::from_maximal(std::vector<Face> facets)
{
    SimplicialComplex c;
    c.facets_ = std::move(facets);
    c.finalize();
    return c;
}

SimplicialComplex SimplicialComplex::generated_by(const std::vector<Face>& faces)
{
    SimplicialComplex c;
    c.facets_ = maximal_faces(faces);
    c.finalize();
    return c;
}

void SimplicialComplex::finalize()
{
    std::sort(facets_.begin(), facets_.end());
    std::vector<Vertex> vs;
    dim_ = -1;
    for (const auto& f : facets_) {
        vs.insert(vs.end(), f.begin(), f.end());
        dim_ = std::max(dim_, face_dim(f));
    }
    vertices_ = make_face(std::move(vs));
}

bool SimplicialComplex::has_vertex(Vertex v) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool SimplicialComplex::is_pure() const
{
    return std::all_of(facets_.begin(), facets_.end(), [&](const Face& f) { return face_dim(f) == dim_; });
}

const FaceSet* SimplicialComplex::face_index() const
{
    std::call_once(cache_->once, [this] {
        std::size_t bound = 0;
        for (const auto& f : facets_) {
            bound += f.size() >= 31 ? kFaceCacheLimit : (std::size_t{1} << f.size());
            if (bound > kFaceCacheLimit)
                return;
        }
        auto set = std::make_shared<FaceSet>();
        set->reserve(bound);
        for (const auto& f : facets_)
            for_each_nonempty_subface(f, [&](const Face& g) { set->insert(g); });
        cache_->faces = std::move(set);
    });
    return cache_->faces.get();
}

bool SimplicialComplex::contains(const Face& f) const
{
    if (f.empty())
        return !empty();
    if (const FaceSet* idx = face_index())
        return idx->count(f) > 0;
    return std::any_of(facets_.begin(), facets_.end(), [&](const Face& g) { return is_subface(f, g); });
}

std::vector<Face> SimplicialComplex::all_faces() const
{
    std::vector<Face> out;
    if (const FaceSet* idx = face_index()) {
        out.assign(idx->begin(), idx->end());
    } else {
        FaceSet tmp;
        for (const auto& f : facets_)
            for_each_nonempty_subface(f, [&](const Face& g) { tmp.insert(g); });
        out.assign(tmp.begin(), tmp.end());
    }
    std::sort(out.begin(), out.end(), DimLexLess{});
    return out;
}

std::vector<Face> SimplicialComplex::faces(int k) const
{
    std::vector<Face> out;
    if (k < -1 || k > dim_)
        return out;
    if (k == -1) {
        if (!empty())
            out.emplace_back();
        return out;
    }
    FaceSet seen;
    const std::size_t n = static_cast<std::size_t>(k) + 1;
    for (const auto& f : facets_) {
        if (f.size() < n)
            continue;
        // enumerate n-subsets of f
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            Face g;
            g.reserve(n);
            for (auto i : idx)
                g.push_back(f[i]);
            seen.insert(std::move(g));
            std::size_t i = n;
            while (i > 0 && idx[i - 1] == f.size() - n + i - 1)
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t j = i; j < n; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
    out.assign(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t SimplicialComplex::num_faces() const
{
    if (const FaceSet* idx = face_index())
        return idx->size();
    return all_faces().size();
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> fv(static_cast<std::size_t>(dim_ + 1), 0);
    for (const auto& f : all_faces())
        ++fv[f.size() - 1];
    return fv;
}

long SimplicialComplex::euler_characteristic() const
{
    long chi = 0;
    auto fv = f_vector();
    for (std::size_t i = 0; i < fv.size(); ++i)
        chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(fv[i]);
    return chi;
}

bool SimplicialComplex::is_connected() const
{
    if (vertices_.size() <= 1)
        return true;
    std::unordered_map<Vertex, Vertex> parent;
    for (Vertex v : vertices_)
        parent[v] = v;
    auto find = [&](Vertex v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& f : facets_)
        for (std::size_t i = 1; i < f.size(); ++i)
            parent[find(f[i])] = find(f[0]);
    Vertex root = find(vertices_.front());
    return std::all_of(vertices_.begin(), vertices_.end(), [&](Vertex v) { return find(v) == root; });
}

SimplicialComplex star(const Face& sigma, const SimplicialComplex& c)
{
    if (!c.contains(sigma))
        throw Error("star: face " + to_string(sigma) + " not in complex");
    std::vector<Face> out;
    for (const auto& f : c.facets())
        if (is_subface(sigma, f))
            out.push_back(f);
    return SimplicialComplex::from_maximal(std::move(out));
}

SimplicialComplex link(const Face& sigma, const SimplicialComplex& c)
{
    if (sigma.empty())
        return c;
    if (!c.contains(sigma))
        throw Error("link: face " + to_string(sigma) + " not in complex");
    std::vector<Face> out;
    for (const auto& f : c.facets()) {
        if (!is_subface(sigma, f) || f.size() == sigma.size())
            continue;
        out.push_back(face_difference(f, sigma));
    }
    return SimplicialComplex::from_maximal(std::move(out));
}

SimplicialComplex delete_face(const SimplicialComplex& c, const Face& sigma)
{
    if (sigma.empty())
        throw Error("delete: empty face");
    if (!c.contains(sigma))
        throw Error("delete: face " + to_string(sigma) + " not in complex");
    std::vector<Face> out;
    bool touched = false;
    for (const auto& f : c.facets()) {
        if (!is_subface(sigma, f)) {
            out.push_back(f);
            continue;
        }
        touched = true;
        for (Vertex x : sigma) {
            Face g = without_vertex(f, x);
            if (!g.empty())
                out.push_back(std::move(g));
        }
    }
    if (!touched)
        return c;
    return SimplicialComplex::generated_by(out);
}

SimplicialComplex delete_subcomplex(const SimplicialComplex& c, const SimplicialComplex& d)
{
    if (!is_subcomplex(d, c))
        throw Error("delete: not a subcomplex");
    std::vector<Vertex> keep;
    std::set_difference(c.vertices().begin(), c.vertices().end(), d.vertices().begin(), d.vertices().end(),
                        std::back_inserter(keep));
    return restriction(c, keep);
}

SimplicialComplex restriction(const SimplicialComplex& c, const std::vector<Vertex>& w)
{
    Face ws = make_face(w);
    std::vector<Face> out;
    bool all_kept = true;
    for (const auto& f : c.facets()) {
        Face g = face_intersection(f, ws);
        if (g.size() != f.size())
            all_kept = false;
        if (!g.empty())
            out.push_back(std::move(g));
    }
    if (all_kept)
        return c;
    return SimplicialComplex::generated_by(out);
}

SimplicialComplex cone(Vertex v, const SimplicialComplex& c)
{
    if (c.has_vertex(v))
        throw Error("cone: apex " + std::to_string(v) + " already a vertex");
    if (c.empty())
        return SimplicialComplex::from_maximal({Face{v}});
    std::vector<Face> out;
    out.reserve(c.num_facets());
    for (const auto& f : c.facets())
        out.push_back(with_vertex(f, v));
    return SimplicialComplex::from_maximal(std::move(out));
}

SimplicialComplex boundary_complex(const SimplicialComplex& c)
{
    if (!c.is_pure())
        throw Error("boundary undefined");
    if (c.dim() <= 0)
        return SimplicialComplex();
    FaceMap<int> count;
    for (const auto& f : c.facets())
        for (Vertex x : f)
            ++count[without_vertex(f, x)];
    std::vector<Face> out;
    for (auto& [g, n] : count)
        if (n == 1)
            out.push_back(g);
    return SimplicialComplex::generated_by(out);
}

bool is_subcomplex(const SimplicialComplex& d, const SimplicialComplex& c)
{
    return std::all_of(d.facets().begin(), d.facets().end(), [&](const Face& f) { return c.contains(f); });
}

SimplicialComplex complex_union(const SimplicialComplex& a, const SimplicialComplex& b)
{
    std::vector<Face> all = a.facets();
    all.insert(all.end(), b.facets().begin(), b.facets().end());
    return SimplicialComplex::generated_by(all);
}

SimplicialComplex complex_intersection(const SimplicialComplex& a, const SimplicialComplex& b)
{
    std::vector<Face> out;
    for (const auto& f : a.facets())
        for (const auto& g : b.facets()) {
            Face h = face_intersection(f, g);
            if (!h.empty())
                out.push_back(std::move(h));
        }
    return SimplicialComplex::generated_by(out);
}

SimplicialComplex relabel(const SimplicialComplex& c, const std::map<Vertex, Vertex>& map)
{
    std::vector<Face> out;
    out.reserve(c.num_facets());
    for (const auto& f : c.facets()) {
        Face g;
        g.reserve(f.size());
        for (Vertex v : f) {
            auto it = map.find(v);
            if (it == map.end())
                throw Error("relabel: vertex " + std::to_string(v) + " unmapped");
            g.push_back(it->second);
        }
        Face h = make_face(g);
        if (h.size() != f.size())
            throw Error("relabel: map not injective");
        out.push_back(std::move(h));
    }
    return SimplicialComplex::from_maximal(std::move(out));
}

std::optional<Vertex> cone_apex(const SimplicialComplex& c)
{
    if (c.empty())
        return std::nullopt;
    Face common = c.facets().front();
    for (const auto& f : c.facets()) {
        common = face_intersection(common, f);
        if (common.empty())
            return std::nullopt;
    }
    return common.front();
}

} // namespace sdc
