#include "sdc/subdivision.hpp"

#include <algorithm>
#include <queue>

namespace sdc {

Vertex DerivedComplex::vertex_of(const Face& base_face) const
{
    auto it = ids.find(base_face);
    if (it == ids.end())
        throw Error("face " + to_string(base_face) + " is not a face of the base complex");
    return it->second;
}

Face DerivedComplex::carrier(const Face& sd_face) const
{
    Face out;
    for (Vertex v : sd_face)
        out = face_union(out, labels.at(static_cast<std::size_t>(v)));
    return out;
}

std::vector<Face> DerivedComplex::chain(const Face& sd_face) const
{
    std::vector<Face> out;
    for (Vertex v : sd_face)
        out.push_back(labels.at(static_cast<std::size_t>(v)));
    std::sort(out.begin(), out.end(), DimLexLess{});
    return out;
}

std::size_t sd_facet_count(const SimplicialComplex& c)
{
    std::size_t total = 0;
    for (const auto& f : c.facets()) {
        std::size_t fact = 1;
        for (std::size_t k = 2; k <= f.size(); ++k)
            fact *= k;
        total += fact;
    }
    return total;
}

DerivedComplex sd(const SimplicialComplex& c, std::size_t facet_limit)
{
    if (sd_facet_count(c) > facet_limit)
        throw Error("subdivision too large");
    DerivedComplex out;
    out.base = c;
    out.labels = c.all_faces();
    out.ids.reserve(out.labels.size());
    for (std::size_t i = 0; i < out.labels.size(); ++i)
        out.ids.emplace(out.labels[i], static_cast<Vertex>(i));

    std::vector<Face> facets;
    facets.reserve(sd_facet_count(c));
    for (const auto& f : c.facets()) {
        Face perm = f;
        do {
            Face prefix;
            Face chain;
            chain.reserve(perm.size());
            for (Vertex v : perm) {
                prefix = with_vertex(prefix, v);
                chain.push_back(out.ids.at(prefix));
            }
            std::sort(chain.begin(), chain.end());
            facets.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.complex = SimplicialComplex::from_maximal(std::move(facets));
    return out;
}

Face IteratedSubdivision::carrier(const Face& face) const
{
    Face out;
    for (Vertex v : face)
        out = face_union(out, root_carriers.at(static_cast<std::size_t>(v)));
    return out;
}

SimplicialComplex IteratedSubdivision::restrict_to(const SimplicialComplex& sub) const
{
    std::vector<Vertex> keep;
    for (Vertex v : complex.vertices())
        if (sub.contains(root_carriers.at(static_cast<std::size_t>(v))))
            keep.push_back(v);
    return restriction(complex, keep);
}

IteratedSubdivision sd_m(const SimplicialComplex& c, int m, std::size_t facet_limit)
{
    if (m < 0)
        throw Error("sd_m: negative iteration count");
    IteratedSubdivision out;
    out.base = c;
    out.complex = c;
    Vertex max_v = c.vertices().empty() ? -1 : c.vertices().back();
    out.root_carriers.assign(static_cast<std::size_t>(max_v + 1), Face{});
    for (Vertex v : c.vertices())
        out.root_carriers[static_cast<std::size_t>(v)] = Face{v};

    for (int k = 0; k < m; ++k) {
        // Project the next level's facet count before building it.
        std::size_t projected = sd_facet_count(out.complex);
        if (projected > facet_limit)
            throw Error("subdivision too large");
        DerivedComplex level = sd(out.complex, facet_limit);
        std::vector<Face> roots(level.labels.size());
        for (std::size_t i = 0; i < level.labels.size(); ++i) {
            Face r;
            for (Vertex w : level.labels[i])
                r = face_union(r, out.root_carriers[static_cast<std::size_t>(w)]);
            roots[i] = std::move(r);
        }
        out.complex = level.complex;
        out.root_carriers = std::move(roots);
        out.levels.push_back(std::move(level));
    }
    return out;
}

SimplicialComplex derived_neighborhood(const DerivedComplex& sdc, const SimplicialComplex& d)
{
    if (!is_subcomplex(d, sdc.base))
        throw Error("derived_neighborhood: D is not a subcomplex of C");
    if (d.empty())
        return SimplicialComplex();
    std::vector<Face> out;
    for (const auto& chain : sdc.complex.facets()) {
        bool hit = std::any_of(chain.begin(), chain.end(), [&](Vertex v) {
            return d.contains(sdc.labels[static_cast<std::size_t>(v)]);
        });
        if (hit)
            out.push_back(chain);
    }
    return SimplicialComplex::from_maximal(std::move(out));
}

std::size_t DerivedOrder::rank_of(const Face& f) const
{
    auto it = rank.find(f);
    if (it == rank.end())
        throw Error("derived order: face " + to_string(f) + " not ranked");
    return it->second;
}

namespace {

// Index into seed of the last-deleted seed element contained in sigma, or -1.
long least_seed_in(const Face& sigma, const std::vector<Face>& seed)
{
    for (long i = static_cast<long>(seed.size()) - 1; i >= 0; --i)
        if (is_subface(seed[static_cast<std::size_t>(i)], sigma))
            return i;
    return -1;
}

} // namespace

DerivedOrder derived_order(const SimplicialComplex& c, const std::vector<Face>& seed)
{
    for (std::size_t i = 0; i < seed.size(); ++i) {
        if (seed[i].empty() || !c.contains(seed[i]))
            throw Error("derived order: seed face " + to_string(seed[i]) + " not in complex");
        for (std::size_t j = 0; j < i; ++j)
            if (!disjoint(seed[i], seed[j]))
                throw Error("derived order: seed faces not mutually disjoint");
    }

    DerivedOrder out;
    out.seed = seed;
    std::vector<Face> faces = c.all_faces();
    const std::size_t n = faces.size();
    FaceMap<std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        index.emplace(faces[i], i);

    // after[a] lists faces that must come after a.
    std::vector<std::vector<std::size_t>> after(n);
    std::vector<std::size_t> indegree(n, 0);
    auto add = [&](std::size_t first, std::size_t second) {
        after[first].push_back(second);
        ++indegree[second];
    };
    for (std::size_t s = 0; s < n; ++s) {
        const Face& sigma = faces[s];
        if (sigma.size() < 2)
            continue;
        long least = least_seed_in(sigma, seed);
        for_each_nonempty_subface(sigma, [&](const Face& tau) {
            if (tau.size() == sigma.size())
                return;
            std::size_t t = index.at(tau);
            if (least >= 0 && tau == seed[static_cast<std::size_t>(least)])
                add(s, t);
            else
                add(t, s);
        });
    }

    // Kahn's algorithm; the heap yields the tie-break minimum first.
    auto later = [&](std::size_t a, std::size_t b) {
        if (faces[a].size() != faces[b].size())
            return faces[a].size() < faces[b].size();
        return faces[a] > faces[b];
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
    for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] == 0)
            ready.push(i);
    out.order.reserve(n);
    while (!ready.empty()) {
        std::size_t a = ready.top();
        ready.pop();
        out.rank.emplace(faces[a], out.order.size());
        out.order.push_back(faces[a]);
        for (std::size_t b : after[a])
            if (--indegree[b] == 0)
                ready.push(b);
    }
    if (out.order.size() != n)
        throw Error("seed order inconsistent");
    return out;
}

bool respects_derived_rules(const DerivedOrder& order, const SimplicialComplex& c)
{
    auto faces = c.all_faces();
    if (faces.size() != order.order.size())
        return false;
    for (const auto& sigma : faces) {
        if (!order.rank.count(sigma))
            return false;
        long least = least_seed_in(sigma, order.seed);
        bool ok = true;
        for_each_nonempty_subface(sigma, [&](const Face& tau) {
            if (!ok || tau.size() == sigma.size())
                return;
            bool sigma_first = least >= 0 && tau == order.seed[static_cast<std::size_t>(least)];
            std::size_t rs = order.rank.at(sigma);
            std::size_t rt = order.rank.at(tau);
            ok = sigma_first ? rs < rt : rt < rs;
        });
        if (!ok)
            return false;
    }
    return true;
}

} // namespace sdc
