#include "sdc/collapse.hpp"

#include "sdc/canonical.hpp"
#include "sdc/error.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_set>

namespace sdc {

FacePoset FacePoset::from_complex(const SimplicialComplex& c)
{
    FacePoset p;
    for (const auto& f : c.all_faces())
        p.add(f);
    return p;
}

void FacePoset::add(const Face& f)
{
    if (f.empty())
        return;
    if (faces_.insert(f).second)
        for (Vertex v : f)
            by_vertex_[v].insert(f);
}

bool FacePoset::remove(const Face& f)
{
    if (!faces_.erase(f))
        return false;
    for (Vertex v : f)
        by_vertex_[v].erase(f);
    return true;
}

std::vector<Face> FacePoset::strict_superfaces(const Face& f) const
{
    std::vector<Face> out;
    if (f.empty()) {
        for (const auto& g : faces_)
            out.push_back(g);
        return out;
    }
    // Scan the smallest per-vertex bucket.
    const std::set<Face>* bucket = nullptr;
    for (Vertex v : f) {
        auto it = by_vertex_.find(v);
        if (it == by_vertex_.end())
            return out;
        if (!bucket || it->second.size() < bucket->size())
            bucket = &it->second;
    }
    for (const auto& g : *bucket)
        if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end()))
            out.push_back(g);
    return out;
}

VerifyResult verify_collapse(FacePoset cur, const std::vector<CollapseStep>& steps, const FacePoset& target)
{
    VerifyResult r;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        auto fail = [&](const std::string& why) {
            r.failed_step = i;
            r.message = "step " + std::to_string(i) + " (" + to_string(s.free_face) + ", " + to_string(s.coface) +
                        "): " + why;
            return r;
        };
        if (!cur.contains(s.free_face))
            return fail("free face not present");
        if (!cur.contains(s.coface))
            return fail("coface not present");
        auto sup = cur.strict_superfaces(s.free_face);
        if (sup.size() != 1)
            return fail("face has " + std::to_string(sup.size()) + " strict superfaces");
        if (sup[0] != s.coface)
            return fail("coface is not the unique superface");
        cur.remove(s.free_face);
        cur.remove(s.coface);
    }
    if (!(cur == target)) {
        r.failed_step = steps.size();
        r.message = "final complex differs from target";
        return r;
    }
    r.ok = true;
    return r;
}

VerifyResult verify_collapse(const SimplicialComplex& c, const CollapseCertificate& cert)
{
    return verify_collapse(FacePoset::from_complex(c), cert.steps, FacePoset::from_complex(cert.target));
}

std::vector<Face> free_faces(const SimplicialComplex& c)
{
    FaceMap<int> supers;
    for (const auto& f : c.all_faces())
        supers.emplace(f, 0);
    for (const auto& f : c.all_faces())
        for_each_nonempty_subface(f, [&](const Face& g) {
            if (g.size() < f.size())
                ++supers[g];
        });
    std::vector<Face> out;
    for (const auto& f : c.all_faces())
        if (supers[f] == 1)
            out.push_back(f);
    return out;
}

SimplicialComplex elementary_collapse(const SimplicialComplex& c, const Face& sigma)
{
    if (!c.contains(sigma) || sigma.empty())
        throw Error("face not free");
    int count = 0;
    for (const auto& f : c.facets())
        if (f.size() > sigma.size() && is_subface(sigma, f))
            count += (f.size() == sigma.size() + 1) ? 1 : 2;
    if (count != 1)
        throw Error("face not free");
    return delete_face(c, sigma);
}

std::string to_string(OutcomeKind k)
{
    switch (k) {
    case OutcomeKind::Certificate: return "certificate";
    case OutcomeKind::Refuted: return "refuted";
    case OutcomeKind::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

namespace {

struct BudgetHit {};

class Engine {
public:
    Engine(const SimplicialComplex& c, const std::optional<SimplicialComplex>& target)
    {
        faces_ = c.all_faces();
        const std::size_t n = faces_.size();
        FaceMap<int> id;
        id.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            id.emplace(faces_[i], static_cast<int>(i));
        up_.assign(n, {});
        down_.assign(n, {});
        for (std::size_t i = 0; i < n; ++i) {
            const Face& f = faces_[i];
            if (f.size() < 2)
                continue;
            for (Vertex v : f) {
                int g = id.at(without_vertex(f, v));
                down_[i].push_back(g);
                up_[static_cast<std::size_t>(g)].push_back(static_cast<int>(i));
            }
        }
        alive_.assign(n, 1);
        in_target_.assign(n, 0);
        up_count_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            up_count_[i] = static_cast<int>(up_[i].size());
        if (target) {
            for (const auto& f : target->all_faces()) {
                auto it = id.find(f);
                if (it == id.end())
                    throw Error("collapse target is not a subcomplex");
                in_target_[static_cast<std::size_t>(it->second)] = 1;
            }
            target_count_ = target->num_faces();
            point_target_ = false;
        }
        alive_count_ = n;
        for (std::size_t i = 0; i < n; ++i)
            refresh(static_cast<int>(i));
    }

    std::size_t size() const { return faces_.size(); }
    const Face& face(int i) const { return faces_[static_cast<std::size_t>(i)]; }

    bool done() const { return point_target_ ? alive_count_ == 1 : alive_count_ == target_count_; }

    int coface(int s) const
    {
        for (int g : up_[static_cast<std::size_t>(s)])
            if (alive_[static_cast<std::size_t>(g)])
                return g;
        return -1;
    }

    bool is_free(int s) const
    {
        auto i = static_cast<std::size_t>(s);
        if (!alive_[i] || in_target_[i] || up_count_[i] != 1)
            return false;
        int t = coface(s);
        return t >= 0 && up_count_[static_cast<std::size_t>(t)] == 0;
    }

    std::vector<int> free_list() const
    {
        std::vector<int> out;
        for (int s : ones_)
            if (is_free(s))
                out.push_back(s);
        return out;
    }

    // Faces whose freeness may have changed after removing (s, t).
    template <typename Fn>
    void touched(int s, int t, Fn&& fn) const
    {
        for (int g : down_[static_cast<std::size_t>(t)]) {
            fn(g);
            if (up_count_[static_cast<std::size_t>(g)] == 0)
                for (int h : down_[static_cast<std::size_t>(g)])
                    fn(h);
        }
        for (int g : down_[static_cast<std::size_t>(s)]) {
            fn(g);
            if (up_count_[static_cast<std::size_t>(g)] == 0)
                for (int h : down_[static_cast<std::size_t>(g)])
                    fn(h);
        }
    }

    void remove(int s, int t)
    {
        kill(s);
        kill(t);
        for (int g : down_[static_cast<std::size_t>(t)])
            bump(g, -1);
        for (int g : down_[static_cast<std::size_t>(s)])
            bump(g, -1);
    }

    void restore(int s, int t)
    {
        for (int g : down_[static_cast<std::size_t>(s)])
            bump(g, +1);
        for (int g : down_[static_cast<std::size_t>(t)])
            bump(g, +1);
        revive(t);
        revive(s);
    }

    std::vector<Face> alive_maximal() const
    {
        std::vector<Face> out;
        for (std::size_t i = 0; i < faces_.size(); ++i)
            if (alive_[i] && up_count_[i] == 0)
                out.push_back(faces_[i]);
        return out;
    }

    SimplicialComplex current() const { return SimplicialComplex::from_maximal(alive_maximal()); }

private:
    void refresh(int g)
    {
        auto i = static_cast<std::size_t>(g);
        if (alive_[i] && !in_target_[i] && up_count_[i] == 1)
            ones_.insert(g);
        else
            ones_.erase(g);
    }
    void bump(int g, int delta)
    {
        up_count_[static_cast<std::size_t>(g)] += delta;
        refresh(g);
    }
    void kill(int g)
    {
        alive_[static_cast<std::size_t>(g)] = 0;
        --alive_count_;
        refresh(g);
    }
    void revive(int g)
    {
        alive_[static_cast<std::size_t>(g)] = 1;
        ++alive_count_;
        refresh(g);
    }

    std::vector<Face> faces_;
    std::vector<std::vector<int>> up_, down_;
    std::vector<char> alive_, in_target_;
    std::vector<int> up_count_;
    std::set<int> ones_;
    std::size_t alive_count_ = 0;
    std::size_t target_count_ = 0;
    bool point_target_ = true;
};

// order[i] = priority position of face i (smaller goes first).
std::vector<std::size_t> ordinals(std::size_t n, const std::function<bool(int, int)>& before)
{
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), before);
    std::vector<std::size_t> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[static_cast<std::size_t>(ids[k])] = k;
    return out;
}

CollapseCertificate make_cert(const Engine& e, const std::vector<std::pair<int, int>>& steps)
{
    CollapseCertificate cert;
    for (auto [s, t] : steps)
        cert.steps.push_back({e.face(s), e.face(t)});
    cert.target = e.current();
    return cert;
}

// Follows the priority without backtracking; true on success.
bool greedy_run(Engine& e, const std::vector<std::size_t>& prio, std::uint64_t& nodes, std::uint64_t budget,
                std::vector<std::pair<int, int>>& steps)
{
    using Item = std::pair<std::size_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    std::vector<char> queued(e.size(), 0);
    auto consider = [&](int g) {
        if (!queued[static_cast<std::size_t>(g)] && e.is_free(g)) {
            queued[static_cast<std::size_t>(g)] = 1;
            heap.emplace(prio[static_cast<std::size_t>(g)], g);
        }
    };
    for (int s : e.free_list())
        consider(s);
    while (!e.done()) {
        int s = -1;
        while (!heap.empty()) {
            int g = heap.top().second;
            heap.pop();
            queued[static_cast<std::size_t>(g)] = 0;
            if (e.is_free(g)) {
                s = g;
                break;
            }
        }
        if (s < 0)
            return false;
        if (++nodes > budget)
            throw BudgetHit{};
        int t = e.coface(s);
        e.remove(s, t);
        steps.emplace_back(s, t);
        e.touched(s, t, consider);
    }
    return true;
}

constexpr std::size_t kMemoLimit = 500'000;
constexpr std::size_t kCanonicalVertexLimit = 13;

struct Dfs {
    Engine& e;
    const std::vector<std::size_t>& prio;
    std::uint64_t budget;
    bool canonical;
    std::uint64_t nodes = 0;
    std::unordered_set<std::string> failed;
    std::vector<std::pair<int, int>> steps;

    std::string key() const
    {
        auto cur = e.current();
        if (canonical && cur.num_vertices() <= kCanonicalVertexLimit)
            return canonical_key(cur, kCanonicalVertexLimit);
        return facet_key(cur);
    }

    bool run()
    {
        if (e.done())
            return true;
        std::string k = key();
        if (failed.count(k))
            return false;
        auto cands = e.free_list();
        std::sort(cands.begin(), cands.end(), [&](int a, int b) {
            return prio[static_cast<std::size_t>(a)] < prio[static_cast<std::size_t>(b)];
        });
        for (int s : cands) {
            if (++nodes > budget)
                throw BudgetHit{};
            int t = e.coface(s);
            e.remove(s, t);
            steps.emplace_back(s, t);
            if (run())
                return true;
            steps.pop_back();
            e.restore(s, t);
        }
        if (failed.size() < kMemoLimit)
            failed.insert(std::move(k));
        return false;
    }
};

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

SearchOutcome collapse_search(const SimplicialComplex& c, const std::optional<SimplicialComplex>& target,
                              const SearchOptions& opts)
{
    if (target && !is_subcomplex(*target, c))
        throw Error("collapse target is not a subcomplex");
    SearchOutcome out;
    if (c.empty()) {
        if (target) {
            out.kind = OutcomeKind::Certificate;
            out.certificate = CollapseCertificate{{}, SimplicialComplex()};
        } else {
            out.kind = OutcomeKind::Refuted;
            out.reason = RefutationReason::NoFreeFace;
        }
        return out;
    }
    Engine e(c, target);
    if (e.done()) {
        out.kind = OutcomeKind::Certificate;
        out.certificate = make_cert(e, {});
        return out;
    }
    if (e.free_list().empty()) {
        out.kind = OutcomeKind::Refuted;
        out.reason = RefutationReason::NoFreeFace;
        return out;
    }
    const std::size_t n = e.size();
    auto dim_lex = [&](int a, int b) {
        if (e.face(a).size() != e.face(b).size())
            return e.face(a).size() > e.face(b).size();
        return e.face(a) < e.face(b);
    };

    try {
        if (opts.strategy == Strategy::Greedy) {
            for (std::uint64_t attempt = 0;; ++attempt) {
                std::uint64_t salt = mix(opts.seed * 0x100000001b3ULL + attempt);
                auto prio = ordinals(n, [&](int a, int b) {
                    if (e.face(a).size() != e.face(b).size())
                        return e.face(a).size() > e.face(b).size();
                    if (opts.seed == 0 && attempt == 0)
                        return e.face(a) < e.face(b);
                    std::uint64_t ha = mix(salt ^ static_cast<std::uint64_t>(a));
                    std::uint64_t hb = mix(salt ^ static_cast<std::uint64_t>(b));
                    return ha != hb ? ha < hb : a < b;
                });
                std::vector<std::pair<int, int>> steps;
                bool ok = greedy_run(e, prio, out.nodes_visited, opts.budget, steps);
                if (ok) {
                    out.kind = OutcomeKind::Certificate;
                    out.certificate = make_cert(e, steps);
                    return out;
                }
                for (auto it = steps.rbegin(); it != steps.rend(); ++it)
                    e.restore(it->first, it->second);
            }
        }

        std::vector<std::size_t> prio;
        if (opts.strategy == Strategy::OrderGuided) {
            auto rank_key = [&](int a) {
                std::vector<std::size_t> r;
                for (Vertex v : e.face(a)) {
                    auto it = opts.vertex_rank.find(v);
                    r.push_back(it == opts.vertex_rank.end() ? static_cast<std::size_t>(-1) : it->second);
                }
                std::sort(r.begin(), r.end());
                return r;
            };
            std::vector<std::vector<std::size_t>> keys(n);
            for (std::size_t i = 0; i < n; ++i)
                keys[i] = rank_key(static_cast<int>(i));
            prio = ordinals(n, [&](int a, int b) {
                const auto& ka = keys[static_cast<std::size_t>(a)];
                const auto& kb = keys[static_cast<std::size_t>(b)];
                if (ka != kb)
                    return ka < kb;
                return dim_lex(a, b);
            });
        } else {
            prio = ordinals(n, dim_lex);
        }
        Dfs dfs{e, prio, opts.budget, !target, 0, {}, {}};
        bool ok;
        try {
            ok = dfs.run();
        } catch (const BudgetHit&) {
            out.nodes_visited = dfs.nodes;
            throw;
        }
        out.nodes_visited = dfs.nodes;
        if (ok) {
            out.kind = OutcomeKind::Certificate;
            out.certificate = make_cert(e, dfs.steps);
        } else {
            out.kind = OutcomeKind::Refuted;
            out.reason = RefutationReason::Exhaustive;
        }
        return out;
    } catch (const BudgetHit&) {
        out.kind = OutcomeKind::BudgetExhausted;
        if (out.nodes_visited > opts.budget)
            out.nodes_visited = opts.budget;
        return out;
    }
}

CollapseCertificate cone_collapse(Vertex apex, const SimplicialComplex& base, const SimplicialComplex& sub)
{
    if (!is_subcomplex(sub, base))
        throw Error("cone_collapse: not a subcomplex");
    if (base.has_vertex(apex))
        throw Error("cone_collapse: apex in base");
    CollapseCertificate cert;
    auto faces = base.all_faces();
    std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) { return a.size() > b.size(); });
    for (const auto& rho : faces)
        if (!sub.contains(rho))
            cert.steps.push_back({rho, with_vertex(rho, apex)});
    cert.target = cone(apex, sub);
    return cert;
}

CollapseCertificate lift_link_collapse(const SimplicialComplex& c, Vertex v, const CollapseCertificate& link_cert)
{
    CollapseCertificate cert;
    for (const auto& s : link_cert.steps)
        cert.steps.push_back({with_vertex(s.free_face, v), with_vertex(s.coface, v)});
    SimplicialComplex rest = delete_vertex(c, v);
    cert.target = complex_union(rest, cone(v, link_cert.target));
    return cert;
}

CollapseCertificate remove_vertex_by_link_collapse(const SimplicialComplex& c, Vertex v,
                                                   const CollapseCertificate& link_cert)
{
    const auto& t = link_cert.target;
    if (t.num_vertices() != 1 || t.dim() != 0)
        throw Error("link certificate does not end at a point");
    CollapseCertificate cert = lift_link_collapse(c, v, link_cert);
    Vertex p = t.vertices().front();
    cert.steps.push_back({Face{v}, make_face({v, p})});
    cert.target = delete_vertex(c, v);
    return cert;
}

CollapseCertificate collapse_union_lemma(const SimplicialComplex& c, const CollapseCertificate& c_to_cprime,
                                         const SimplicialComplex& d)
{
    if (!(complex_intersection(d, c) == c_to_cprime.target))
        throw Error("union lemma: D ∩ C differs from C'");
    SimplicialComplex u = complex_union(d, c);
    CollapseCertificate cert{c_to_cprime.steps, d};
    auto check = verify_collapse(u, cert);
    if (!check)
        throw Error("union lemma: replay failed: " + check.message);
    return cert;
}

CollapseCertificate concat(const CollapseCertificate& a, const CollapseCertificate& b)
{
    CollapseCertificate out = a;
    out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
    out.target = b.target;
    return out;
}

} // namespace sdc
