#include "sdc/nonevasive.hpp"

#include "sdc/canonical.hpp"
#include "sdc/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace sdc {

std::size_t NECertificate::size() const
{
    if (is_point())
        return 1;
    return 1 + link->size() + deletion->size();
}

NECert NECertificate::point(Vertex v)
{
    auto c = std::make_shared<NECertificate>();
    c->v = v;
    return c;
}

NECert NECertificate::node(Vertex v, NECert link, NECert deletion)
{
    if (!link || !deletion)
        throw Error("NE node needs link and deletion certificates");
    auto c = std::make_shared<NECertificate>();
    c->v = v;
    c->link = std::move(link);
    c->deletion = std::move(deletion);
    return c;
}

NECert relabel(const NECert& cert, const std::map<Vertex, Vertex>& map)
{
    Vertex v = map.at(cert->v);
    if (cert->is_point())
        return NECertificate::point(v);
    return NECertificate::node(v, relabel(cert->link, map), relabel(cert->deletion, map));
}

NECert cone_certificate(Vertex apex, const SimplicialComplex& c)
{
    if (!c.has_vertex(apex))
        throw Error("cone_certificate: apex not in complex");
    if (c.num_vertices() == 1)
        return NECertificate::point(apex);
    Vertex b = c.vertices().front() == apex ? c.vertices()[1] : c.vertices().front();
    return NECertificate::node(b, cone_certificate(apex, link(Face{b}, c)), cone_certificate(apex, delete_vertex(c, b)));
}

namespace {

struct BudgetHit {};

constexpr std::size_t kNEMemoLimit = 500'000;
constexpr std::size_t kNECanonicalLimit = 13;

struct NESearch {
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::unordered_set<std::string> failed;

    std::string key(const SimplicialComplex& c) const
    {
        if (c.num_vertices() <= kNECanonicalLimit)
            return canonical_key(c, kNECanonicalLimit);
        return facet_key(c);
    }

    NECert run(const SimplicialComplex& c)
    {
        if (++nodes > budget)
            throw BudgetHit{};
        if (c.empty())
            return nullptr;
        if (c.num_vertices() == 1)
            return NECertificate::point(c.vertices().front());
        if (c.dim() == 0)
            return nullptr;
        if (auto apex = cone_apex(c))
            return cone_certificate(*apex, c);
        // Non-evasive complexes are collapsible, hence connected with χ = 1.
        if (c.euler_characteristic() != 1 || !c.is_connected())
            return nullptr;
        std::string k = key(c);
        if (failed.count(k))
            return nullptr;

        struct Cand {
            std::size_t link_facets;
            Vertex v;
            SimplicialComplex lk;
        };
        std::vector<Cand> cands;
        for (Vertex v : c.vertices()) {
            auto lk = link(Face{v}, c);
            cands.push_back({lk.num_facets(), v, std::move(lk)});
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Cand& a, const Cand& b) { return a.link_facets < b.link_facets; });
        for (const auto& cand : cands) {
            NECert lc = run(cand.lk);
            if (!lc)
                continue;
            NECert dc = run(delete_vertex(c, cand.v));
            if (!dc)
                continue;
            return NECertificate::node(cand.v, lc, dc);
        }
        if (failed.size() < kNEMemoLimit)
            failed.insert(std::move(k));
        return nullptr;
    }
};

VerifyResult verify_ne_at(const SimplicialComplex& c, const NECert& cert, const std::string& path)
{
    VerifyResult r;
    auto fail = [&](const std::string& why) {
        r.message = (path.empty() ? std::string("root") : path) + ": " + why;
        return r;
    };
    if (!cert)
        return fail("missing certificate");
    if (cert->is_point()) {
        if (c.num_vertices() != 1 || c.vertices().front() != cert->v)
            return fail("Point(" + std::to_string(cert->v) + ") on a complex that is not that single vertex");
        r.ok = true;
        return r;
    }
    if (!c.has_vertex(cert->v))
        return fail("vertex " + std::to_string(cert->v) + " not in complex");
    auto a = verify_ne_at(link(Face{cert->v}, c), cert->link, path + "/lk" + std::to_string(cert->v));
    if (!a)
        return a;
    return verify_ne_at(delete_vertex(c, cert->v), cert->deletion, path + "/del" + std::to_string(cert->v));
}

void ne_collapse_steps(const SimplicialComplex& c, const NECert& cert, std::vector<CollapseStep>& out, Vertex& last)
{
    if (cert->is_point()) {
        last = cert->v;
        return;
    }
    Vertex v = cert->v;
    SimplicialComplex lk = link(Face{v}, c);
    std::vector<CollapseStep> inner;
    Vertex p = 0;
    ne_collapse_steps(lk, cert->link, inner, p);
    for (const auto& s : inner)
        out.push_back({with_vertex(s.free_face, v), with_vertex(s.coface, v)});
    out.push_back({Face{v}, make_face({v, p})});
    ne_collapse_steps(delete_vertex(c, v), cert->deletion, out, last);
}

} // namespace

NEOutcome is_nonevasive(const SimplicialComplex& c, std::uint64_t budget)
{
    NEOutcome out;
    NESearch s{budget, 0, {}};
    try {
        out.certificate = s.run(c);
        out.kind = out.certificate ? OutcomeKind::Certificate : OutcomeKind::Refuted;
    } catch (const BudgetHit&) {
        out.kind = OutcomeKind::BudgetExhausted;
    }
    out.nodes_visited = std::min(s.nodes, budget);
    return out;
}

VerifyResult verify_ne(const SimplicialComplex& c, const NECert& cert)
{
    return verify_ne_at(c, cert, "");
}

CollapseCertificate ne_to_collapse(const SimplicialComplex& c, const NECert& cert)
{
    auto ok = verify_ne(c, cert);
    if (!ok)
        throw Error("invalid NE certificate: " + ok.message);
    CollapseCertificate out;
    Vertex last = 0;
    ne_collapse_steps(c, cert, out.steps, last);
    out.target = SimplicialComplex::from_maximal({Face{last}});
    return out;
}

VerifyResult verify_ne_steps(const NEStepSequence& seq)
{
    VerifyResult r;
    SimplicialComplex cur = seq.start;
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& s = seq.steps[i];
        if (!cur.has_vertex(s.v)) {
            r.failed_step = i;
            r.message = "step " + std::to_string(i) + ": vertex " + std::to_string(s.v) + " not present";
            return r;
        }
        auto lk = verify_ne(link(Face{s.v}, cur), s.link_cert);
        if (!lk) {
            r.failed_step = i;
            r.message = "step " + std::to_string(i) + ": link of " + std::to_string(s.v) + ": " + lk.message;
            return r;
        }
        cur = delete_vertex(cur, s.v);
    }
    if (!(cur == seq.final_complex)) {
        r.failed_step = seq.steps.size();
        r.message = "final complex differs";
        return r;
    }
    r.ok = true;
    return r;
}

NECert chain_certificate(const NEStepSequence& seq, const NECert& rest)
{
    NECert out = rest;
    for (auto it = seq.steps.rbegin(); it != seq.steps.rend(); ++it)
        out = NECertificate::node(it->v, it->link_cert, out);
    return out;
}

namespace {

SimplicialComplex sd_of_sub(const DerivedComplex& s, const SimplicialComplex& k)
{
    std::vector<Vertex> keep;
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        if (k.contains(s.labels[i]))
            keep.push_back(static_cast<Vertex>(i));
    return restriction(s.complex, keep);
}

// (sd K) - û ↘_NE sd(K - u): delete the sd-vertices of faces strictly
// containing u by increasing dimension; each link is a cone with apex τ - u.
void append_deletion_steps(const DerivedComplex& s, const SimplicialComplex& k, Vertex u, SimplicialComplex& cur,
                           std::vector<NEStep>& out)
{
    std::vector<Face> taus;
    for (const auto& tau : star(Face{u}, k).all_faces())
        if (tau.size() > 1 && contains_vertex(tau, u))
            taus.push_back(tau);
    std::sort(taus.begin(), taus.end(), DimLexLess{});
    for (const auto& tau : taus) {
        Vertex w = s.vertex_of(tau);
        Vertex apex = s.vertex_of(without_vertex(tau, u));
        SimplicialComplex lk = link(Face{w}, cur);
        out.push_back({w, cone_certificate(apex, lk)});
        cur = delete_vertex(cur, w);
    }
}

// Certificate for Lk(û, sd K) ≅ sd Lk(u, K), in the ids of s.
NECert lifted_link_cert(const DerivedComplex& s, const SimplicialComplex& k, Vertex u, const NECert& link_cert)
{
    SimplicialComplex lk = link(Face{u}, k);
    DerivedComplex sl = sd(lk);
    NECert inner = lift_ne_to_sd(sl, lk, link_cert);
    std::map<Vertex, Vertex> map;
    for (std::size_t i = 0; i < sl.labels.size(); ++i)
        map[static_cast<Vertex>(i)] = s.vertex_of(with_vertex(sl.labels[i], u));
    return relabel(inner, map);
}

} // namespace

NECert lift_ne_to_sd(const DerivedComplex& s, const SimplicialComplex& k, const NECert& cert)
{
    if (cert->is_point())
        return NECertificate::point(s.vertex_of(Face{cert->v}));
    Vertex u = cert->v;
    NEStepSequence seq;
    seq.start = sd_of_sub(s, k);
    Vertex uh = s.vertex_of(Face{u});
    seq.steps.push_back({uh, lifted_link_cert(s, k, u, cert->link)});
    SimplicialComplex cur = delete_vertex(seq.start, uh);
    append_deletion_steps(s, k, u, cur, seq.steps);
    SimplicialComplex rest = delete_vertex(k, u);
    return chain_certificate(seq, lift_ne_to_sd(s, rest, cert->deletion));
}

NEStepSequence lift_ne_steps(const DerivedComplex& s, const NEStepSequence& seq)
{
    NEStepSequence out;
    out.start = sd_of_sub(s, seq.start);
    SimplicialComplex k = seq.start;
    SimplicialComplex cur = out.start;
    for (const auto& step : seq.steps) {
        Vertex uh = s.vertex_of(Face{step.v});
        out.steps.push_back({uh, lifted_link_cert(s, k, step.v, step.link_cert)});
        cur = delete_vertex(cur, uh);
        append_deletion_steps(s, k, step.v, cur, out.steps);
        k = delete_vertex(k, step.v);
    }
    out.final_complex = cur;
    return out;
}

namespace {

// v traced to its vertex id in sd^level C.
Vertex vertex_at_level(const IteratedSubdivision& it, Vertex v, int level)
{
    for (int k = 0; k < level; ++k)
        v = it.levels[static_cast<std::size_t>(k)].vertex_of(Face{v});
    return v;
}

NEStepSequence deletion_at(const IteratedSubdivision& it, Vertex v, int m)
{
    const DerivedComplex& s = it.levels[static_cast<std::size_t>(m - 1)];
    const SimplicialComplex& k = s.base;   // sd^{m-1} C
    Vertex u = vertex_at_level(it, v, m - 1);
    NEStepSequence out;
    out.start = delete_vertex(s.complex, s.vertex_of(Face{u}));
    SimplicialComplex cur = out.start;
    append_deletion_steps(s, k, u, cur, out.steps);
    if (m == 1) {
        out.final_complex = cur;
        return out;
    }
    // sd((sd^{m-1} C) - u) ↘_NE sd(sd^{m-1}(C - v)) by lifting the level below.
    NEStepSequence below = deletion_at(it, v, m - 1);
    NEStepSequence lifted = lift_ne_steps(s, below);
    if (!(lifted.start == cur))
        throw Error("sd_ne_deletion: level mismatch");
    out.steps.insert(out.steps.end(), lifted.steps.begin(), lifted.steps.end());
    out.final_complex = lifted.final_complex;
    return out;
}

} // namespace

NEStepSequence sd_ne_deletion(const IteratedSubdivision& it, Vertex v)
{
    if (!it.base.has_vertex(v))
        throw Error("sd_ne_deletion: vertex not in complex");
    if (it.depth() == 0) {
        NEStepSequence out;
        out.start = delete_vertex(it.complex, v);
        out.final_complex = out.start;
        return out;
    }
    return deletion_at(it, v, it.depth());
}

NEStepSequence sd_ne_deletion(const SimplicialComplex& c, Vertex v, int m)
{
    return sd_ne_deletion(sd_m(c, m), v);
}

} // namespace sdc
