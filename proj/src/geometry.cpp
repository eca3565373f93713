#include "sdc/geometry.hpp"

#include "sdc/error.hpp"
#include "sdc/lp.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sdc {

const Point& GeometricComplex::at(Vertex v) const
{
    auto it = coords.find(v);
    if (it == coords.end())
        throw Error("vertex " + std::to_string(v) + " has no coordinates");
    return it->second;
}

std::vector<Point> GeometricComplex::points(const Face& f) const
{
    std::vector<Point> out;
    out.reserve(f.size());
    for (Vertex v : f)
        out.push_back(at(v));
    return out;
}

namespace {

// True iff conv(a) and conv(b) meet exactly in conv(a ∩ b).
bool meet_properly(const GeometricComplex& gc, const Face& a, const Face& b)
{
    const std::size_t d = gc.ambient_dim;
    Face common = face_intersection(a, b);
    // Bounding-box rejection.
    for (std::size_t k = 0; k < d; ++k) {
        Rational alo = gc.at(a[0])[k], ahi = alo, blo = gc.at(b[0])[k], bhi = blo;
        for (Vertex v : a) {
            alo = std::min(alo, gc.at(v)[k]);
            ahi = std::max(ahi, gc.at(v)[k]);
        }
        for (Vertex v : b) {
            blo = std::min(blo, gc.at(v)[k]);
            bhi = std::max(bhi, gc.at(v)[k]);
        }
        if (ahi < blo || bhi < alo)
            return true;
    }
    // Variables: λ over a, μ over b, all ≥ 0.
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    Matrix eq;
    Point rhs;
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Rational> row(n);
        for (std::size_t i = 0; i < na; ++i)
            row[i] = gc.at(a[i])[k];
        for (std::size_t j = 0; j < nb; ++j)
            row[na + j] = -gc.at(b[j])[k];
        eq.push_back(std::move(row));
        rhs.push_back(0);
    }
    std::vector<Rational> sa(n), sb(n);
    for (std::size_t i = 0; i < na; ++i)
        sa[i] = 1;
    for (std::size_t j = 0; j < nb; ++j)
        sb[na + j] = 1;
    eq.push_back(sa);
    rhs.push_back(1);
    eq.push_back(sb);
    rhs.push_back(1);
    Point obj(n, Rational(0));
    for (std::size_t i = 0; i < na; ++i)
        if (!contains_vertex(common, a[i]))
            obj[i] = 1;
    auto res = lp_maximize(obj, {}, {}, eq, rhs, true);
    return res.status != LPStatus::Optimal || res.value == 0;
}

struct Ridge {
    Face ridge;
    Face facet;
    Vertex opposite;
};

// Boundary ridges of a pure d-complex; throws unless every ridge lies in one or two facets.
std::vector<Ridge> boundary_ridges(const GeometricComplex& gc)
{
    const auto& c = gc.complex;
    if (c.empty() || !c.is_pure() || static_cast<std::size_t>(c.dim()) != gc.ambient_dim || c.dim() < 1)
        throw Error("kernel: complex is not pure full-dimensional");
    FaceMap<std::vector<std::pair<Face, Vertex>>> inc;
    for (const auto& f : c.facets())
        for (Vertex v : f)
            inc[without_vertex(f, v)].emplace_back(f, v);
    std::vector<Ridge> out;
    for (auto& [r, list] : inc) {
        if (list.size() > 2)
            throw Error("kernel: complex is not a pseudomanifold");
        if (list.size() == 1)
            out.push_back({r, list[0].first, list[0].second});
    }
    if (out.empty())
        throw Error("kernel: complex has empty boundary");
    std::sort(out.begin(), out.end(), [](const Ridge& x, const Ridge& y) { return x.ridge < y.ridge; });
    return out;
}

// Hyperplane through the ridge, oriented so `inside` is strictly positive.
Hyperplane ridge_plane(const std::vector<Point>& ridge, const Point& inside)
{
    Matrix m;
    for (std::size_t i = 1; i < ridge.size(); ++i)
        m.push_back(ridge[i] - ridge[0]);
    auto ns = nullspace(m, ridge[0].size());
    if (ns.size() != 1)
        throw Error("degenerate facet");
    Hyperplane h{ns[0], dot(ns[0], ridge[0])};
    if (h.side(inside) < 0) {
        h.normal = Rational(-1) * h.normal;
        h.offset = -h.offset;
    }
    return h;
}

std::vector<Hyperplane> kernel_constraints(const GeometricComplex& gc)
{
    std::vector<Hyperplane> out;
    for (const auto& r : boundary_ridges(gc))
        out.push_back(ridge_plane(gc.points(r.ridge), gc.at(r.opposite)));
    return out;
}

} // namespace

GeometricComplex make_geometric(SimplicialComplex c, std::map<Vertex, Point> coords, std::size_t pair_budget)
{
    GeometricComplex gc;
    gc.complex = std::move(c);
    gc.coords = std::move(coords);
    gc.ambient_dim = gc.coords.empty() ? 0 : gc.coords.begin()->second.size();
    for (const auto& [v, p] : gc.coords)
        if (p.size() != gc.ambient_dim)
            throw InputError("coordinate length mismatch at vertex " + std::to_string(v));
    for (Vertex v : gc.complex.vertices())
        if (!gc.coords.count(v))
            throw InputError("vertex " + std::to_string(v) + " has no coordinates");
    for (const auto& f : gc.complex.facets())
        if (!affinely_independent(gc.points(f)))
            throw InputError("face " + to_string(f) + " is affinely dependent");
    const auto& fs = gc.complex.facets();
    const std::size_t pairs = fs.size() * (fs.size() - (fs.empty() ? 0 : 1)) / 2;
    if (pairs > pair_budget)
        return gc;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j)
            if (!meet_properly(gc, fs[i], fs[j]) || !meet_properly(gc, fs[j], fs[i]))
                throw InputError("facets " + to_string(fs[i]) + " and " + to_string(fs[j]) + " intersect improperly");
    gc.intersections_verified = true;
    return gc;
}

Rational Hyperplane::eval(const Point& x) const
{
    return dot(normal, x) - offset;
}

bool is_generic_direction(const Point& nu, const GeometricComplex& gc)
{
    if (std::all_of(nu.begin(), nu.end(), [](const Rational& q) { return q == 0; }))
        return false;
    std::vector<Rational> values;
    for (Vertex v : gc.complex.vertices())
        values.push_back(dot(gc.at(v), nu));
    std::sort(values.begin(), values.end());
    // Distinct vertex values already rule out edges orthogonal to nu.
    return std::adjacent_find(values.begin(), values.end()) == values.end();
}

Point perturb_to_generic(const GeometricComplex& gc, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::size_t d = std::max<std::size_t>(gc.ambient_dim, 1);
    long den = 7;
    for (int attempt = 0;; ++attempt) {
        std::uniform_int_distribution<long> dist(-den, den);
        Point nu(d);
        for (auto& x : nu)
            x = Rational(dist(rng), den);
        for (auto& x : nu)
            x.canonicalize();
        if (is_generic_direction(nu, gc))
            return nu;
        if (attempt % 4 == 3 && den < (1L << 40))
            den = den * 2 + 1;
    }
}

KernelDescription kernel(const GeometricComplex& gc)
{
    KernelDescription out;
    out.constraints = kernel_constraints(gc);
    const std::size_t d = gc.ambient_dim;
    // maximize t  subject to  -<n, x> + t <= -offset,  t <= 1.
    Matrix rows;
    Point rhs;
    for (const auto& h : out.constraints) {
        std::vector<Rational> row(d + 1);
        for (std::size_t k = 0; k < d; ++k)
            row[k] = -h.normal[k];
        row[d] = 1;
        rows.push_back(std::move(row));
        rhs.push_back(-h.offset);
    }
    std::vector<Rational> cap(d + 1, Rational(0));
    cap[d] = 1;
    rows.push_back(cap);
    rhs.push_back(1);
    Point obj(d + 1, Rational(0));
    obj[d] = 1;
    auto res = lp_maximize(obj, rows, rhs);
    if (res.status == LPStatus::Optimal && res.value > 0)
        out.witness = Point(res.x.begin(), res.x.begin() + static_cast<long>(d));
    return out;
}

bool is_star_shaped_with_center(const GeometricComplex& gc, const Point& x)
{
    for (const auto& h : kernel_constraints(gc))
        if (h.side(x) < 0)
            return false;
    return true;
}

SimplicialComplex lower_link(Vertex v, const GeometricComplex& gc, const Point& nu)
{
    if (!is_generic_direction(nu, gc))
        throw Error("lower_link: direction is not generic");
    SimplicialComplex lk = link(Face{v}, gc.complex);
    std::vector<Vertex> keep;
    const Point& pv = gc.at(v);
    for (Vertex w : lk.vertices())
        if (dot(gc.at(w) - pv, nu) < 0)
            keep.push_back(w);
    return restriction(lk, keep);
}

SimplicialComplex halfspace_restriction(const SimplicialComplex& c, const std::map<Vertex, Point>& placement,
                                        const Hyperplane& h, HalfspaceSide side)
{
    std::vector<Vertex> keep;
    for (Vertex v : c.vertices()) {
        auto it = placement.find(v);
        if (it == placement.end())
            throw Error("halfspace_restriction: vertex " + std::to_string(v) + " has no placement");
        int s = h.side(it->second);
        bool ok = side == HalfspaceSide::Above ? s >= 0 : side == HalfspaceSide::On ? s == 0 : s <= 0;
        if (ok)
            keep.push_back(v);
    }
    return restriction(c, keep);
}

std::vector<HullFacet> convex_hull_facets(const std::vector<Point>& pts)
{
    if (pts.empty())
        throw Error("convex hull of no points");
    const std::size_t d = pts.front().size();
    if (d > 3)
        throw Error("unsupported dimension");
    if (!std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return p.size() == d; }))
        throw Error("convex hull: mixed dimensions");
    {
        Matrix m;
        for (std::size_t i = 1; i < pts.size(); ++i)
            m.push_back(pts[i] - pts[0]);
        if (d == 0 || rank(m) != d)
            throw Error("convex hull: degenerate span");
    }
    std::vector<HullFacet> out;
    std::set<std::vector<std::size_t>> seen;
    const std::size_t n = pts.size();
    // Enumerate d-subsets in lexicographic order.
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(d), true);
    do {
        std::vector<Point> sub;
        std::vector<std::size_t> ids;
        for (std::size_t i = 0; i < n; ++i)
            if (pick[i]) {
                sub.push_back(pts[i]);
                ids.push_back(i);
            }
        Point normal;
        if (d == 1) {
            normal = Point{Rational(1)};
        } else {
            Matrix m;
            for (std::size_t i = 1; i < sub.size(); ++i)
                m.push_back(sub[i] - sub[0]);
            auto ns = nullspace(m, d);
            if (ns.size() != 1)
                continue;
            normal = ns[0];
        }
        Rational off = dot(normal, sub[0]);
        bool pos = false, neg = false;
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < n; ++i) {
            int s = sign(dot(normal, pts[i]) - off);
            if (s > 0)
                pos = true;
            else if (s < 0)
                neg = true;
            else
                on.push_back(i);
        }
        if (pos && neg)
            continue;
        if (pos) {
            normal = Rational(-1) * normal;
            off = -off;
        }
        if (!seen.insert(on).second)
            continue;
        out.push_back({on, normal, off});
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

Rational hull_volume(const std::vector<Point>& pts)
{
    const std::size_t d = pts.front().size();
    if (d == 1) {
        Rational lo = pts[0][0], hi = lo;
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    auto facets = convex_hull_facets(pts);
    Point c = barycenter(pts);
    Rational vol = 0;
    for (const auto& f : facets) {
        std::size_t k = 0;
        while (f.normal[k] == 0)
            ++k;
        std::vector<Point> proj;
        for (std::size_t i : f.points) {
            Point q;
            for (std::size_t j = 0; j < d; ++j)
                if (j != k)
                    q.push_back(pts[i][j]);
            proj.push_back(std::move(q));
        }
        Rational height = f.offset - dot(f.normal, c);
        vol += height * hull_volume(proj) / abs(f.normal[k]);
    }
    return vol / static_cast<unsigned long>(d);
}

bool is_convex_complex(const GeometricComplex& gc)
{
    const auto& c = gc.complex;
    if (gc.ambient_dim > 3)
        throw Error("unsupported dimension");
    if (c.empty() || !c.is_pure() || static_cast<std::size_t>(c.dim()) != gc.ambient_dim)
        throw Error("is_convex_complex: complex is not pure full-dimensional");
    if (gc.ambient_dim == 0)
        return c.num_vertices() == 1;
    Rational total = 0;
    for (const auto& f : c.facets())
        total += simplex_volume(gc.points(f));
    std::vector<Point> all;
    for (Vertex v : c.vertices())
        all.push_back(gc.at(v));
    return hull_volume(all) == total;
}

GeometricComplex PlacedSubdivision::geometric(std::size_t ambient_dim) const
{
    GeometricComplex gc;
    gc.complex = sd.complex;
    gc.coords = placement;
    gc.ambient_dim = ambient_dim;
    return gc;
}

PlacedSubdivision h_splitting_sd(const GeometricComplex& gc, const Hyperplane& h)
{
    for (Vertex v : gc.complex.vertices())
        if (h.side(gc.at(v)) == 0)
            throw Error("H not generic");
    PlacedSubdivision out;
    out.sd = sd(gc.complex);
    for (std::size_t i = 0; i < out.sd.labels.size(); ++i) {
        const Face& tau = out.sd.labels[i];
        std::vector<Point> cross;
        for (std::size_t a = 0; a < tau.size(); ++a)
            for (std::size_t b = a + 1; b < tau.size(); ++b) {
                const Point& pa = gc.at(tau[a]);
                const Point& pb = gc.at(tau[b]);
                Rational sa = h.eval(pa), sb = h.eval(pb);
                if (sign(sa) * sign(sb) < 0)
                    cross.push_back(pa + (sa / (sa - sb)) * (pb - pa));
            }
        out.placement[static_cast<Vertex>(i)] = cross.empty() ? barycenter(gc.points(tau)) : barycenter(cross);
    }
    return out;
}

PlacedSubdivision geometric_sd(const GeometricComplex& gc)
{
    PlacedSubdivision out;
    out.sd = sd(gc.complex);
    for (std::size_t i = 0; i < out.sd.labels.size(); ++i)
        out.placement[static_cast<Vertex>(i)] = barycenter(gc.points(out.sd.labels[i]));
    return out;
}

} // namespace sdc
