#include "sdc/pipelines.hpp"

#include "sdc/error.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sdc {

namespace {

std::size_t pivot_coordinate(const Point& nu)
{
    for (std::size_t k = 0; k < nu.size(); ++k)
        if (nu[k] != 0)
            return k;
    throw Error("zero direction");
}

Point drop_coordinate(const Point& p, std::size_t k)
{
    Point out;
    out.reserve(p.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (i != k)
            out.push_back(p[i]);
    return out;
}

std::vector<Vertex> by_decreasing(const std::vector<Vertex>& vs, const GeometricComplex& gc, const Point& nu)
{
    std::vector<std::pair<Rational, Vertex>> keyed;
    for (Vertex v : vs)
        keyed.emplace_back(dot(gc.at(v), nu), v);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Vertex> out;
    for (auto& [val, v] : keyed)
        out.push_back(v);
    return out;
}

Vertex argmin_along(const Face& tau, const GeometricComplex& gc, const Point& nu)
{
    Vertex best = tau.front();
    for (Vertex w : tau)
        if (dot(gc.at(w), nu) < dot(gc.at(best), nu))
            best = w;
    return best;
}

bool is_cone_with_apex(const SimplicialComplex& c, Vertex a)
{
    if (!c.has_vertex(a))
        return false;
    return std::all_of(c.facets().begin(), c.facets().end(), [&](const Face& f) { return contains_vertex(f, a); });
}

// Sub-complex of sd C over the base faces accepted by `keep`.
template <typename Pred>
SimplicialComplex restrict_labels(const DerivedComplex& s, Pred keep)
{
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        if (keep(s.labels[i]))
            vs.push_back(static_cast<Vertex>(i));
    return restriction(s.complex, vs);
}

SimplicialComplex sd_boundary(const DerivedComplex& s)
{
    SimplicialComplex b = boundary_complex(s.base);
    return restrict_labels(s, [&](const Face& f) { return b.contains(f); });
}

const char* strategy_name(Strategy s)
{
    switch (s) {
    case Strategy::Greedy:
        return "greedy";
    case Strategy::Backtracking:
        return "backtracking";
    case Strategy::OrderGuided:
        return "order-guided";
    }
    return "?";
}

// Tries order-guided (when ranks are given), greedy, then backtracking.
SearchOutcome ladder_search(const SimplicialComplex& c, const std::optional<SimplicialComplex>& target,
                            const std::map<Vertex, std::size_t>& rank, const PipelineOptions& opts,
                            std::size_t& fallbacks, std::vector<std::string>& log, const std::string& what)
{
    std::vector<Strategy> plan;
    if (!rank.empty())
        plan.push_back(Strategy::OrderGuided);
    plan.push_back(Strategy::Greedy);
    plan.push_back(Strategy::Backtracking);
    SearchOutcome last;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        SearchOptions so;
        so.strategy = plan[i];
        so.budget = opts.budget;
        so.seed = opts.seed;
        if (plan[i] == Strategy::OrderGuided)
            so.vertex_rank = rank;
        last = collapse_search(c, target, so);
        if (last.found()) {
            if (i > 0)
                log.push_back(what + ": found by " + strategy_name(plan[i]) + " search");
            return last;
        }
        if (last.kind == OutcomeKind::Refuted &&
            (plan[i] == Strategy::Backtracking || last.reason == RefutationReason::NoFreeFace))
            return last;
        ++fallbacks;
        log.push_back(what + ": " + strategy_name(plan[i]) + " search gave " + to_string(last.kind));
    }
    return last;
}

CollapseCertificate require(const SearchOutcome& o, const std::string& what)
{
    if (o.found())
        return *o.certificate;
    if (o.kind == OutcomeKind::Refuted)
        throw RefutedError(what + ": no collapse exists");
    throw BudgetExhaustedError(what + ": budget exhausted");
}

NECert ne_search(const SimplicialComplex& c, const PipelineOptions& opts, const std::string& what)
{
    NEOutcome o = is_nonevasive(c, opts.budget);
    if (o.found())
        return o.certificate;
    if (o.kind == OutcomeKind::Refuted)
        throw RefutedError(what + ": not non-evasive");
    throw BudgetExhaustedError(what + ": budget exhausted");
}

// Vertices v of f with f - v already present; the minimal new face of f.
Face restriction_face(const Face& f, const FaceSet& prefix)
{
    Face r;
    for (Vertex v : f) {
        Face g = without_vertex(f, v);
        if (g.empty() || prefix.count(g))
            r.push_back(v);
    }
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// Polytopes and shellings

Face Polytope::cell() const
{
    Face out;
    for (const auto& [v, p] : vertices)
        out.push_back(v);
    return out;
}

SimplicialComplex Polytope::boundary() const
{
    return SimplicialComplex::from_facets(facets);
}

FacePoset Polytope::poset() const
{
    FacePoset out = FacePoset::from_complex(boundary());
    out.add(cell());
    return out;
}

Polytope polytope_from_points(const std::map<Vertex, Point>& pts)
{
    std::vector<Vertex> ids;
    std::vector<Point> coords;
    for (const auto& [v, p] : pts) {
        ids.push_back(v);
        coords.push_back(p);
    }
    auto hull = convex_hull_facets(coords);
    const std::size_t d = coords.front().size();

    std::vector<std::vector<std::size_t>> on(coords.size());
    for (std::size_t f = 0; f < hull.size(); ++f)
        for (std::size_t i : hull[f].points)
            on[i].push_back(f);
    std::vector<bool> extreme(coords.size(), false);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        Matrix normals;
        for (std::size_t f : on[i])
            normals.push_back(hull[f].normal);
        extreme[i] = !normals.empty() && rank(normals) == d;
    }

    Polytope out;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (extreme[i])
            out.vertices[ids[i]] = coords[i];
    for (const auto& h : hull) {
        Face f;
        for (std::size_t i : h.points)
            if (extreme[i])
                f.push_back(ids[i]);
        f = make_face(f);
        if (f.size() != d)
            throw Error("non-simplicial facet " + to_string(f));
        out.facets.push_back(f);
        out.planes.push_back({h.normal, h.offset});
    }
    return out;
}

bool satisfies_shelling_condition(const std::vector<Face>& facets)
{
    FaceSet prefix;
    for (std::size_t j = 0; j < facets.size(); ++j) {
        const Face& f = facets[j];
        if (j > 0) {
            if (prefix.count(f))
                return false;
            Face r = restriction_face(f, prefix);
            if (r.empty())
                return false;
            bool ok = true;
            for_each_nonempty_subface(f, [&](const Face& g) {
                if (ok && g.size() < f.size())
                    ok = (prefix.count(g) > 0) == !is_subface(r, g);
            });
            if (!ok)
                return false;
        }
        for_each_nonempty_subface(f, [&](const Face& g) { prefix.insert(g); });
    }
    return true;
}

ShellingResult bruggesser_mani_shelling(const Polytope& p, const Face& mu, std::uint64_t seed)
{
    SimplicialComplex bd = p.boundary();
    if (mu.empty() || !bd.contains(mu))
        throw Error("mu is not a proper face of P");
    std::vector<Point> all;
    for (const auto& [v, x] : p.vertices)
        all.push_back(x);
    const Point c = barycenter(all);
    std::vector<Point> mu_pts;
    for (Vertex v : mu)
        mu_pts.push_back(p.vertices.at(v));
    const Point base_dir = barycenter(mu_pts) - c;
    const std::size_t d = c.size();

    std::vector<bool> in_star(p.facets.size());
    std::size_t star_size = 0;
    for (std::size_t f = 0; f < p.facets.size(); ++f) {
        in_star[f] = is_subface(mu, p.facets[f]);
        star_size += in_star[f];
    }

    // The exact line through relint mu ties every facet of the star at the
    // same parameter; tilt it slightly and keep the first tilt that is
    // generic and still crosses the star first.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-8, 8);
    ShellingResult out;
    bool found = false;
    for (int attempt = 0; attempt < 256 && !found; ++attempt) {
        Rational eps(1, 1UL << (2 + attempt / 8));
        Point dir = base_dir;
        for (std::size_t k = 0; k < d; ++k)
            dir[k] += eps * Rational(dist(rng), 8);
        std::vector<std::pair<Rational, std::size_t>> pos, neg;
        bool generic = true;
        for (std::size_t f = 0; f < p.facets.size() && generic; ++f) {
            Rational den = dot(dir, p.planes[f].normal);
            if (den == 0) {
                generic = false;
                break;
            }
            Rational t = (p.planes[f].offset - dot(c, p.planes[f].normal)) / den;
            (t > 0 ? pos : neg).emplace_back(t, f);
        }
        if (!generic)
            continue;
        std::sort(pos.begin(), pos.end());
        std::sort(neg.begin(), neg.end());
        std::vector<std::pair<Rational, std::size_t>> seq = pos;
        seq.insert(seq.end(), neg.begin(), neg.end());
        for (std::size_t i = 1; i < seq.size() && generic; ++i)
            if (seq[i].first == seq[i - 1].first)
                generic = false;
        if (!generic)
            continue;
        bool star_first = true;
        for (std::size_t i = 0; i < seq.size(); ++i)
            if (in_star[seq[i].second] != (i < star_size))
                star_first = false;
        if (!star_first)
            continue;
        found = true;
        out.order.line_point = c;
        out.order.direction = dir;
        out.order.star_size = star_size;
        for (auto& [t, f] : seq) {
            out.order.facets.push_back(p.facets[f]);
            out.order.crossings.push_back(t);
        }
    }
    if (!found)
        throw Error("no generic line found");
    const auto& fs = out.order.facets;
    if (!satisfies_shelling_condition(fs))
        throw Error("rocket order violates the shelling condition");

    out.start = p.poset();
    out.steps.push_back({fs.back(), p.cell()});
    std::vector<FaceSet> prefixes;
    {
        FaceSet acc;
        for (const auto& f : fs) {
            prefixes.push_back(acc);
            for_each_nonempty_subface(f, [&](const Face& g) { acc.insert(g); });
        }
    }
    for (std::size_t j = fs.size() - 1; j-- > star_size;) {
        const Face& f = fs[j];
        Face r = restriction_face(f, prefixes[j]);
        Face free = face_difference(f, r);
        if (free.empty())
            throw Error("shelling interval is the whole facet");
        Vertex u = free.front();
        Face top = without_vertex(f, u);
        std::vector<Face> interval;
        for_each_nonempty_subface(top, [&](const Face& g) {
            if (is_subface(r, g))
                interval.push_back(g);
        });
        std::sort(interval.begin(), interval.end(), [](const Face& a, const Face& b) {
            if (a.size() != b.size())
                return a.size() > b.size();
            return a < b;
        });
        for (const auto& g : interval)
            out.steps.push_back({g, with_vertex(g, u)});
    }
    std::vector<Face> star_facets(fs.begin(), fs.begin() + static_cast<long>(star_size));
    out.target = FacePoset::from_complex(SimplicialComplex::from_facets(star_facets));
    auto check = verify_collapse(out.start, out.steps, out.target);
    if (!check)
        throw Error("shelling certificate failed: " + check.message);
    return out;
}

// ---------------------------------------------------------------------------
// Carriers and the transfer through a subdivision

FaceMap<Face> polytope_carriers(const Polytope& p, const GeometricComplex& d)
{
    std::map<Vertex, std::vector<std::size_t>> on;
    for (Vertex v : d.complex.vertices()) {
        auto& list = on[v];
        for (std::size_t f = 0; f < p.planes.size(); ++f) {
            int s = p.planes[f].side(d.at(v));
            if (s > 0)
                throw Error("carrier inconsistency: vertex " + std::to_string(v) + " outside P");
            if (s == 0)
                list.push_back(f);
        }
    }
    const Face cell = p.cell();
    FaceMap<Face> out;
    for (const auto& delta : d.complex.all_faces()) {
        std::vector<std::size_t> common = on.at(delta.front());
        for (Vertex v : delta) {
            std::vector<std::size_t> next;
            const auto& l = on.at(v);
            std::set_intersection(common.begin(), common.end(), l.begin(), l.end(), std::back_inserter(next));
            common = std::move(next);
        }
        Face car = cell;
        for (std::size_t f : common)
            car = face_intersection(car, p.facets[f]);
        if (car.empty())
            throw Error("carrier inconsistency at " + to_string(delta));
        out.emplace(delta, std::move(car));
    }
    return out;
}

FaceMap<Face> simplicial_carriers(const GeometricComplex& c, const GeometricComplex& d)
{
    std::map<Vertex, Face> support;
    for (Vertex x : d.complex.vertices()) {
        bool placed = false;
        for (const auto& f : c.complex.facets()) {
            auto bc = barycentric_coordinates(c.points(f), d.at(x));
            if (!bc || std::any_of(bc->begin(), bc->end(), [](const Rational& q) { return q < 0; }))
                continue;
            Face s;
            for (std::size_t i = 0; i < f.size(); ++i)
                if ((*bc)[i] > 0)
                    s.push_back(f[i]);
            support[x] = s;
            placed = true;
            break;
        }
        if (!placed)
            throw Error("carrier inconsistency: vertex " + std::to_string(x) + " outside C");
    }
    FaceMap<Face> out;
    for (const auto& delta : d.complex.all_faces()) {
        Face car;
        for (Vertex v : delta)
            car = face_union(car, support.at(v));
        if (!c.complex.contains(car))
            throw Error("carrier inconsistency at " + to_string(delta));
        out.emplace(delta, std::move(car));
    }
    return out;
}

HudsonResult hudson_transfer(const FacePoset& c, const std::vector<CollapseStep>& steps,
                             const SimplicialComplex& d, const FaceMap<Face>& carrier, const PipelineOptions& opts)
{
    HudsonResult out;
    out.sd = sd(d);
    const DerivedComplex& s = out.sd;
    std::vector<Face> car(s.labels.size());
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        auto it = carrier.find(s.labels[i]);
        if (it == carrier.end() || !c.contains(it->second))
            throw Error("carrier inconsistency at " + to_string(s.labels[i]));
        car[i] = it->second;
    }

    FacePoset rest = c;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& st = steps[i];
        auto up = rest.contains(st.free_face) ? rest.strict_superfaces(st.free_face) : std::vector<Face>{};
        if (up.size() != 1 || up.front() != st.coface)
            throw Error("certificate for C fails at step " + std::to_string(i));
        rest.remove(st.coface);
        rest.remove(st.free_face);
    }

    auto region = [&](const Face& cell, bool strict) {
        std::vector<Vertex> keep;
        for (std::size_t i = 0; i < car.size(); ++i)
            if (is_subface(car[i], cell) && !(strict && car[i] == cell))
                keep.push_back(static_cast<Vertex>(i));
        return restriction(s.complex, keep);
    };
    auto sub_collapse = [&](const SimplicialComplex& from, const SimplicialComplex& to, const std::string& what) {
        if (from == to)
            return;
        auto o = ladder_search(from, to, {}, opts, out.fallbacks, out.log, what);
        auto cert = require(o, what);
        out.cert.steps.insert(out.cert.steps.end(), cert.steps.begin(), cert.steps.end());
    };

    for (const auto& st : steps) {
        SimplicialComplex r_small = region(st.free_face, false);
        SimplicialComplex r_big = region(st.coface, false);
        FaceSet small_facets(r_small.facets().begin(), r_small.facets().end());
        std::optional<std::pair<Face, Face>> best;
        for (const auto& big : r_big.facets())
            for (Vertex x : big) {
                std::pair<Face, Face> cand{without_vertex(big, x), big};
                if (small_facets.count(cand.first) && (!best || cand < *best))
                    best = cand;
            }
        if (!best)
            throw Error("no admissible (delta, Delta) pair for step " + to_string(st.free_face));
        out.cert.steps.push_back({best->first, best->second});
        const std::string tag = to_string(st.free_face) + "/" + to_string(st.coface);
        sub_collapse(delete_face(r_big, best->second), region(st.coface, true), "R(sd D, " + tag + ") upper");
        sub_collapse(delete_face(r_small, best->first), region(st.free_face, true), "R(sd D, " + tag + ") lower");
    }

    std::vector<Vertex> keep;
    for (std::size_t i = 0; i < car.size(); ++i)
        if (rest.contains(car[i]))
            keep.push_back(static_cast<Vertex>(i));
    out.cert.target = restriction(s.complex, keep);
    auto check = verify_collapse(s.complex, out.cert);
    if (!check)
        throw Error("hudson transfer produced an invalid certificate: " + check.message);
    out.log.push_back("transferred " + std::to_string(steps.size()) + " steps into " +
                      std::to_string(out.cert.steps.size()) + " steps of sd D");
    return out;
}

// ---------------------------------------------------------------------------
// sd C ↘ sd ∂C − F for convex C

namespace {

struct BoundaryForm {
    CollapseCertificate cert;
    Face removed;
};

BoundaryForm boundary_form(const GeometricComplex& gc, const DerivedComplex& s, BoundaryCollapse& acc,
                           const PipelineOptions& opts, int depth)
{
    const std::size_t d = gc.ambient_dim;
    const Point nu = perturb_to_generic(gc, opts.seed + static_cast<std::uint64_t>(depth));
    const std::vector<Vertex> seed_vs = by_decreasing(gc.complex.vertices(), gc, nu);
    std::vector<Face> seed;
    for (Vertex v : seed_vs)
        seed.push_back(Face{v});
    DerivedOrder ord = derived_order(gc.complex, seed);
    const Vertex v0 = seed_vs.front();
    if (ord.order.front() != Face{v0})
        throw Error("derived order does not start at the maximal vertex");
    std::map<Vertex, std::size_t> rank;
    for (std::size_t i = 0; i < ord.order.size(); ++i)
        rank[s.vertex_of(ord.order[i])] = i;
    if (depth == 0)
        acc.order_rank = rank;

    const SimplicialComplex bsd = sd_boundary(s);
    const Vertex top = s.vertex_of(Face{v0});
    BoundaryForm out;

    if (d == 1) {
        out.removed = Face{top};
        SimplicialComplex cf = delete_face(bsd, out.removed);
        auto o = ladder_search(s.complex, cf, {}, opts, acc.fallbacks, acc.log, "segment");
        out.cert = require(o, "segment");
        return out;
    }

    // Step 0: the link of v0, centrally projected to <u, nu> = -1.
    SimplicialComplex lk = link(Face{v0}, gc.complex);
    const std::size_t k = pivot_coordinate(nu);
    std::map<Vertex, Point> lcoords;
    for (Vertex w : lk.vertices()) {
        Point u = gc.at(w) - gc.at(v0);
        lcoords[w] = drop_coordinate(Rational(-1) / dot(u, nu) * u, k);
    }
    GeometricComplex lg = make_geometric(lk, lcoords);
    DerivedComplex ls = sd(lk);
    BoundaryForm inner = boundary_form(lg, ls, acc, opts, depth + 1);

    std::map<Vertex, Vertex> up;
    for (std::size_t i = 0; i < ls.labels.size(); ++i)
        up[static_cast<Vertex>(i)] = s.vertex_of(with_vertex(ls.labels[i], v0));
    CollapseCertificate lifted_link;
    for (const auto& st : inner.cert.steps) {
        Face a, b;
        for (Vertex x : st.free_face)
            a.push_back(up.at(x));
        for (Vertex x : st.coface)
            b.push_back(up.at(x));
        lifted_link.steps.push_back({make_face(a), make_face(b)});
    }
    lifted_link.target = relabel(inner.cert.target, up);
    CollapseCertificate total = lift_link_collapse(s.complex, top, lifted_link);
    Face rf;
    for (Vertex x : inner.removed)
        rf.push_back(up.at(x));
    out.removed = with_vertex(make_face(rf), top);
    const SimplicialComplex cf = delete_face(bsd, out.removed);

    SimplicialComplex ci = delete_vertex(s.complex, top);
    if (!(total.target == complex_union(ci, cf)))
        throw Error("boundary collapse: first step misses sd C - v0 plus the boundary part");

    for (std::size_t i = 1; i + 1 < ord.order.size(); ++i) {
        const Face& tau = ord.order[i];
        const Vertex vi = s.vertex_of(tau);
        SimplicialComplex lp = link(Face{vi}, ci);
        SimplicialComplex next = delete_vertex(ci, vi);
        SimplicialComplex sigma_next = complex_union(next, cf);
        const bool on_boundary = cf.has_vertex(vi);
        if (lp.empty()) {
            if (!on_boundary)
                throw Error("boundary collapse: isolated interior vertex " + to_string(tau));
            ci = std::move(next);
            continue;
        }
        std::optional<SimplicialComplex> goal;
        if (on_boundary)
            goal = complex_intersection(link(Face{vi}, cf), lp);

        std::optional<CollapseCertificate> lc;
        if (tau.size() > 1) {
            const Vertex a = s.vertex_of(Face{argmin_along(tau, gc, nu)});
            if (is_cone_with_apex(lp, a) && (!goal || goal->empty() || is_cone_with_apex(*goal, a))) {
                SimplicialComplex sub = goal && !goal->empty() ? link(Face{a}, *goal) : SimplicialComplex();
                CollapseCertificate cc = cone_collapse(a, link(Face{a}, lp), sub);
                SimplicialComplex want = goal ? *goal : SimplicialComplex::from_maximal({Face{a}});
                if (cc.target == want) {
                    lc = std::move(cc);
                    ++acc.cone_dispatches;
                }
            }
            if (!lc) {
                ++acc.fallbacks;
                acc.log.push_back("face " + to_string(tau) + ": link is not the expected cone, searching");
            }
        }
        if (!lc) {
            ++acc.link_searches;
            auto o = ladder_search(lp, goal, rank, opts, acc.fallbacks, acc.log, "link of " + to_string(tau));
            lc = require(o, "link of " + to_string(tau));
        }
        CollapseCertificate lifted = on_boundary ? lift_link_collapse(ci, vi, *lc)
                                                 : remove_vertex_by_link_collapse(ci, vi, *lc);
        total = concat(total, collapse_union_lemma(ci, lifted, sigma_next));
        ci = std::move(next);
    }
    if (!(total.target == cf))
        throw Error("boundary collapse did not end at sd ∂C - F");
    out.cert = std::move(total);
    return out;
}

} // namespace

BoundaryCollapse convex_boundary_collapse(const GeometricComplex& gc, const PipelineOptions& opts)
{
    if (gc.ambient_dim == 0)
        throw Error("convex_boundary_collapse: dimension must be positive");
    if (!is_convex_complex(gc))
        throw Error("non-convex input");
    BoundaryCollapse out;
    out.sd = sd(gc.complex);
    BoundaryForm f = boundary_form(gc, out.sd, out, opts, 0);
    out.removed = f.removed;
    out.cert = std::move(f.cert);
    auto check = verify_collapse(out.sd.complex, out.cert);
    if (!check)
        throw Error("boundary collapse certificate failed: " + check.message);
    return out;
}

SearchOutcome boundary_collapse_minus_facet(const DerivedComplex& s, const Face& sigma,
                                            const std::map<Vertex, std::size_t>& vertex_rank,
                                            const PipelineOptions& opts)
{
    if (!std::binary_search(s.complex.facets().begin(), s.complex.facets().end(), sigma))
        throw Error("boundary_collapse_minus_facet: not a facet of sd C");
    std::size_t fallbacks = 0;
    std::vector<std::string> log;
    return ladder_search(delete_face(s.complex, sigma), sd_boundary(s), vertex_rank, opts, fallbacks, log,
                         "sd C - facet");
}

// ---------------------------------------------------------------------------
// Pipelines

namespace {

template <typename Fn>
PipelineReport run_reported(const std::string& theorem, Fn&& body)
{
    PipelineReport rep;
    rep.theorem = theorem;
    try {
        body(rep);
        rep.outcome = OutcomeKind::Certificate;
    } catch (const BudgetExhaustedError& e) {
        rep.outcome = OutcomeKind::BudgetExhausted;
        rep.log.push_back(std::string("stopped: ") + e.what());
        rep.collapse.reset();
        rep.ne.reset();
    } catch (const RefutedError& e) {
        rep.outcome = OutcomeKind::Refuted;
        rep.log.push_back(std::string("stopped: ") + e.what());
        rep.collapse.reset();
        rep.ne.reset();
    }
    return rep;
}

} // namespace

PipelineReport convex_collapse_pipeline(const GeometricComplex& gc, const PipelineOptions& opts)
{
    if (gc.ambient_dim > 3)
        throw Error("unsupported dimension");
    if (gc.ambient_dim == 0)
        throw Error("convex_collapse_pipeline: dimension must be positive");
    if (!is_convex_complex(gc))
        throw Error("non-convex input");
    return run_reported("convex", [&](PipelineReport& rep) {
        Polytope p = polytope_from_points(gc.coords);
        const Vertex a = p.cell().front();
        ShellingResult sh = bruggesser_mani_shelling(p, Face{a}, opts.seed);
        std::vector<CollapseStep> steps = sh.steps;
        SimplicialComplex bd = p.boundary();
        CollapseCertificate rest = cone_collapse(a, link(Face{a}, bd), SimplicialComplex());
        steps.insert(steps.end(), rest.steps.begin(), rest.steps.end());
        rep.log.push_back("polytope: " + std::to_string(p.vertices.size()) + " vertices, " +
                          std::to_string(p.facets.size()) + " facets; " + std::to_string(steps.size()) +
                          " poset steps to vertex " + std::to_string(a));

        HudsonResult h = hudson_transfer(p.poset(), steps, gc.complex, polytope_carriers(p, gc), opts);
        rep.log.insert(rep.log.end(), h.log.begin(), h.log.end());
        rep.fallbacks += h.fallbacks;
        if (h.cert.target.num_vertices() != 1 || h.cert.target.dim() != 0)
            throw Error("convex pipeline did not end at a point");
        rep.complex = h.sd.complex;
        rep.labels = h.sd.labels;
        rep.subdivisions = 1;
        rep.collapse = std::move(h.cert);
    });
}

namespace {

// N(LLk, Lk) for the original vertex v, realized in the affine chart
// <u, nu> = -1 of its tangent directions. The vertices of `lk` are sd-vertices.
std::optional<std::pair<GeometricComplex, int>> realize_link(const GeometricComplex& gc, const DerivedComplex& s,
                                                             Vertex v, const SimplicialComplex& lk,
                                                             const Point& nu, const Point& x, int steps)
{
    const Point& pv = gc.at(v);
    const std::size_t k = pivot_coordinate(nu);
    auto chart = [&](const Point& u) { return drop_coordinate(Rational(-1) / dot(u, nu) * u, k); };
    const Point center = chart(x - pv);

    struct Parts {
        Point lower;   // on <u, nu> = -1
        std::optional<Point> wall;   // on <u, nu> = 0
    };
    std::map<Vertex, Parts> parts;
    for (Vertex y : lk.vertices()) {
        Face rho = without_vertex(s.labels[static_cast<std::size_t>(y)], v);
        std::vector<Point> lows, highs, crossings;
        for (Vertex w : rho) {
            Point u = gc.at(w) - pv;
            (dot(u, nu) < 0 ? lows : highs).push_back(u);
        }
        if (lows.empty())
            return std::nullopt;
        std::vector<Point> lifted;
        for (const auto& u : lows)
            lifted.push_back(Rational(-1) / dot(u, nu) * u);
        Parts pt{barycenter(lifted), std::nullopt};
        for (const auto& a : lows)
            for (const auto& b : highs) {
                Rational sa = dot(a, nu), sb = dot(b, nu);
                crossings.push_back(a + (sa / (sa - sb)) * (b - a));
            }
        if (!crossings.empty())
            pt.wall = barycenter(crossings);
        parts[y] = std::move(pt);
    }
    for (int step = 1; step <= steps; ++step) {
        Rational r = 1 - Rational(1, 1UL << step);
        std::map<Vertex, Point> coords;
        for (const auto& [y, pt] : parts)
            coords[y] = pt.wall ? chart((1 - r) * pt.lower + r * *pt.wall) : drop_coordinate(pt.lower, k);
        GeometricComplex g;
        try {
            g = make_geometric(lk, coords);
        } catch (const InputError&) {
            continue;
        }
        try {
            if (is_star_shaped_with_center(g, center))
                return std::make_pair(std::move(g), step);
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

NECert planar_ne(const SimplicialComplex& c, const PipelineOptions& opts, const std::string& what)
{
    return ne_search(c, opts, what);
}

void star_shaped_3d(const GeometricComplex& gc, const Point& witness, PipelineReport& rep, const PipelineOptions& opts)
{
    Point x = witness;
    auto is_vertex = [&](const Point& q) {
        return std::any_of(gc.coords.begin(), gc.coords.end(), [&](const auto& kv) { return kv.second == q; });
    };
    if (is_vertex(x)) {
        // Any hyperplane through a vertex hits it; move inside the open kernel.
        KernelDescription kd = kernel(gc);
        Point dir(x.size(), Rational(0));
        dir[0] = 1;
        for (int e = 1;; ++e) {
            Point y = x + Rational(1, 1UL << e) * dir;
            bool inside = std::all_of(kd.constraints.begin(), kd.constraints.end(),
                                      [&](const Hyperplane& h) { return h.side(y) > 0; });
            if (inside && !is_vertex(y)) {
                x = y;
                break;
            }
            if (e > 60)
                throw Error("could not move the star-center off the vertices");
        }
        rep.log.push_back("kernel witness was a vertex; moved inside the kernel");
    }

    Point nu;
    Hyperplane h;
    for (std::uint64_t attempt = 0;; ++attempt) {
        nu = perturb_to_generic(gc, opts.seed + attempt);
        h = Hyperplane{nu, dot(x, nu)};
        bool clear = std::all_of(gc.complex.vertices().begin(), gc.complex.vertices().end(),
                                 [&](Vertex v) { return h.side(gc.at(v)) != 0; });
        if (clear)
            break;
        if (attempt > 1000)
            throw Error("no direction keeps the vertices off H");
    }
    PlacedSubdivision placed = h_splitting_sd(gc, h);
    const DerivedComplex& s = placed.sd;
    rep.complex = s.complex;
    rep.labels = s.labels;
    rep.subdivisions = 1;

    NEStepSequence seq;
    seq.start = s.complex;
    SimplicialComplex cur = s.complex;
    for (int side : {1, -1}) {
        const Point onu = Rational(side) * nu;
        std::vector<Vertex> half;
        for (Vertex v : gc.complex.vertices())
            if (h.side(gc.at(v)) == side)
                half.push_back(v);
        if (half.empty())
            continue;
        std::vector<Face> seed;
        for (Vertex v : by_decreasing(half, gc, onu))
            seed.push_back(Face{v});
        DerivedOrder ord = derived_order(restriction(gc.complex, half), seed);
        for (const auto& tau : ord.order) {
            const Vertex y = s.vertex_of(tau);
            SimplicialComplex lk = link(Face{y}, cur);
            NECert lc;
            const std::string what = "link of " + to_string(tau);
            if (tau.size() > 1) {
                const Vertex a = s.vertex_of(Face{argmin_along(tau, gc, onu)});
                if (is_cone_with_apex(lk, a)) {
                    lc = cone_certificate(a, lk);
                    ++rep.cone_dispatches;
                } else {
                    ++rep.fallbacks;
                    rep.log.push_back(what + ": not the expected cone, searching");
                    lc = ne_search(lk, opts, what);
                }
            } else {
                auto real = realize_link(gc, s, tau.front(), lk, onu, x, opts.realization_steps);
                if (real) {
                    ++rep.link_realizations;
                    rep.log.push_back(what + ": rung (i), star-shaped at r = 1 - 2^-" +
                                      std::to_string(real->second));
                    lc = planar_ne(real->first.complex, opts, what);
                } else {
                    ++rep.link_searches;
                    ++rep.fallbacks;
                    rep.log.push_back(what + ": rung (ii), searching N(LLk, Lk)");
                    lc = ne_search(lk, opts, what);
                }
            }
            seq.steps.push_back({y, lc});
            cur = delete_vertex(cur, y);
        }
    }
    seq.final_complex = cur;
    if (!(cur == halfspace_restriction(s.complex, placed.placement, h, HalfspaceSide::On)))
        throw Error("vertex deletions did not end at R(sd C, H)");

    // R(sd C, H) inside H, with the same star-center.
    const std::size_t k = pivot_coordinate(nu);
    std::map<Vertex, Point> flat;
    for (Vertex v : cur.vertices())
        flat[v] = drop_coordinate(placed.placement.at(v), k);
    try {
        GeometricComplex g = make_geometric(cur, flat);
        bool centered = is_star_shaped_with_center(g, drop_coordinate(x, k));
        rep.log.push_back(std::string("R(sd C, H): ") + (centered ? "star-shaped about x" : "x is not a star-center"));
    } catch (const Error& e) {
        rep.log.push_back(std::string("R(sd C, H): star-center not checked (") + e.what() + ")");
    }
    NECert rest = planar_ne(cur, opts, "R(sd C, H)");
    rep.ne = chain_certificate(seq, rest);
}

} // namespace

PipelineReport star_shaped_ne_pipeline(const GeometricComplex& gc, const PipelineOptions& opts)
{
    const std::size_t d = gc.ambient_dim;
    if (d < 2)
        throw Error("star-shaped pipeline needs dimension at least 2");
    if (d > 3)
        throw Error("unsupported dimension");
    KernelDescription kd = kernel(gc);
    if (kd.empty())
        throw Error("not star-shaped");
    PipelineReport rep = run_reported("star-shaped", [&](PipelineReport& r) {
        if (d == 2) {
            r.complex = gc.complex;
            r.subdivisions = 0;
            r.ne = planar_ne(gc.complex, opts, "planar complex");
            r.log.push_back("planar base case: direct search");
        } else {
            star_shaped_3d(gc, *kd.witness, r, opts);
        }
    });
    if (rep.ok()) {
        auto check = verify_ne(rep.complex, rep.ne);
        if (!check)
            throw Error("star-shaped pipeline produced an invalid certificate: " + check.message);
    }
    return rep;
}

} // namespace sdc
