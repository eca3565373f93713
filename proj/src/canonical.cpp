#include "sdc/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace sdc {

namespace {

constexpr std::size_t kLeafBudget = 200000;

struct Refiner {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> facets;         // facets over local ids
    std::vector<std::vector<std::size_t>> facets_of;      // local vertex -> facet indices

    // Re-ranks colors by signature until the partition is stable.
    std::vector<int> refine(std::vector<int> color) const
    {
        std::size_t cells = count_cells(color);
        while (true) {
            std::vector<std::pair<std::vector<long>, std::size_t>> sig(n);
            for (std::size_t v = 0; v < n; ++v) {
                std::vector<std::vector<int>> around;
                for (std::size_t fi : facets_of[v]) {
                    std::vector<int> cs;
                    for (std::size_t w : facets[fi])
                        if (w != v)
                            cs.push_back(color[w]);
                    std::sort(cs.begin(), cs.end());
                    around.push_back(std::move(cs));
                }
                std::sort(around.begin(), around.end());
                std::vector<long> s{color[v]};
                for (auto& a : around) {
                    s.push_back(-1 - static_cast<long>(a.size()));
                    s.insert(s.end(), a.begin(), a.end());
                }
                sig[v] = {std::move(s), v};
            }
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig[a].first < sig[b].first; });
            std::vector<int> next(n);
            int rank = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i > 0 && sig[order[i]].first != sig[order[i - 1]].first)
                    rank = static_cast<int>(i);
                next[order[i]] = rank;
            }
            std::size_t next_cells = count_cells(next);
            color = std::move(next);
            if (next_cells == cells)
                return color;
            cells = next_cells;
        }
    }

    static std::size_t count_cells(const std::vector<int>& color)
    {
        std::vector<int> c = color;
        std::sort(c.begin(), c.end());
        return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
    }
};

struct Search {
    const Refiner& r;
    std::optional<std::vector<Face>> best;
    std::vector<int> best_color;
    std::size_t leaves = 0;

    void run(const std::vector<int>& color)
    {
        // Find the first non-singleton cell in color order.
        std::vector<std::size_t> count(r.n, 0);
        for (int c : color)
            ++count[static_cast<std::size_t>(c)];
        int target = -1;
        for (std::size_t c = 0; c < r.n; ++c)
            if (count[c] > 1) {
                target = static_cast<int>(c);
                break;
            }
        if (target < 0) {
            if (++leaves > kLeafBudget)
                throw Error("canonicalization too large");
            std::vector<Face> labeled;
            labeled.reserve(r.facets.size());
            for (const auto& f : r.facets) {
                Face g;
                for (std::size_t v : f)
                    g.push_back(color[v]);
                std::sort(g.begin(), g.end());
                labeled.push_back(std::move(g));
            }
            std::sort(labeled.begin(), labeled.end());
            if (!best || labeled < *best) {
                best = std::move(labeled);
                best_color = color;
            }
            return;
        }
        for (std::size_t v = 0; v < r.n; ++v) {
            if (color[v] != target)
                continue;
            // Individualize v: it keeps rank `target`, the rest of its cell moves up one.
            std::vector<int> c = color;
            for (std::size_t w = 0; w < r.n; ++w)
                if (color[w] == target && w != v)
                    c[w] = target + 1;
            run(r.refine(std::move(c)));
        }
    }
};

} // namespace

CanonicalForm canonical_form(const SimplicialComplex& c, std::size_t max_vertices)
{
    const auto& verts = c.vertices();
    if (verts.size() > max_vertices)
        throw Error("canonicalization too large");
    CanonicalForm out;
    if (c.empty())
        return out;

    Refiner r;
    r.n = verts.size();
    r.facets_of.assign(r.n, {});
    auto local = [&](Vertex v) {
        return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    for (const auto& f : c.facets()) {
        std::vector<std::size_t> lf;
        for (Vertex v : f)
            lf.push_back(local(v));
        for (auto v : lf)
            r.facets_of[v].push_back(r.facets.size());
        r.facets.push_back(std::move(lf));
    }
    Search s{r, std::nullopt, {}, 0};
    s.run(r.refine(std::vector<int>(r.n, 0)));
    out.facets = std::move(*s.best);
    for (std::size_t i = 0; i < r.n; ++i)
        out.relabeling[verts[i]] = s.best_color[i];
    return out;
}

namespace {
std::string key_of(const std::vector<Face>& facets)
{
    std::string key;
    for (const auto& f : facets) {
        for (Vertex v : f) {
            key += std::to_string(v);
            key += ',';
        }
        key += ';';
    }
    return key;
}
} // namespace

std::string canonical_key(const SimplicialComplex& c, std::size_t max_vertices)
{
    return key_of(canonical_form(c, max_vertices).facets);
}

std::string facet_key(const SimplicialComplex& c)
{
    return key_of(c.facets());
}

} // namespace sdc
