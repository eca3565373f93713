#include "sdc/error.hpp"
#include "sdc/geometry.hpp"
#include "sdc/lp.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sdc;

namespace {

Point P(std::initializer_list<long> xs)
{
    Point p;
    for (long x : xs)
        p.emplace_back(x);
    return p;
}

Rational Q(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

GeometricComplex square()
{
    return make_geometric(SimplicialComplex::from_facets({{1, 2, 3}, {1, 3, 4}}),
                          {{1, P({0, 0})}, {2, P({1, 0})}, {3, P({1, 1})}, {4, P({0, 1})}});
}

// Five-pointed star: inner pentagon 0..4 fanned from center 10, spikes 5..9.
// Rational points on the unit circle via t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)).
GeometricComplex star_polygon()
{
    const long ts[5][2] = {{0, 1}, {2, 3}, {3, 1}, {-3, 1}, {-2, 3}};
    std::map<Vertex, Point> xy;
    std::vector<Point> unit;
    for (auto& t : ts) {
        Rational tt(t[0], t[1]);
        Rational den = 1 + tt * tt;
        unit.push_back({(1 - tt * tt) / den, 2 * tt / den});
    }
    std::vector<std::size_t> ord = {0, 1, 2, 3, 4};
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
        auto qa = [&](std::size_t i) { return unit[i][1] >= 0 ? 0 : 1; };
        if (qa(a) != qa(b))
            return qa(a) < qa(b);
        return qa(a) == 0 ? unit[a][0] > unit[b][0] : unit[a][0] < unit[b][0];
    });
    std::vector<Point> ring;
    for (auto i : ord)
        ring.push_back(unit[i]);
    std::vector<std::vector<Vertex>> facets;
    for (int i = 0; i < 5; ++i) {
        xy[i] = ring[static_cast<std::size_t>(i)];
        const Point& a = ring[static_cast<std::size_t>(i)];
        const Point& b = ring[static_cast<std::size_t>((i + 1) % 5)];
        Point mid = Rational(1, 2) * (a + b);
        xy[5 + i] = Rational(3) * mid;
        facets.push_back({i, (i + 1) % 5, 5 + i});
        facets.push_back({i, (i + 1) % 5, 10});
    }
    xy[10] = P({0, 0});
    return make_geometric(SimplicialComplex::from_facets(facets), xy);
}

GeometricComplex annulus()
{
    // Square [0,3]^2 with the hole (1,2)^2, eight quadrilaterals split in two.
    std::map<Vertex, Point> xy = {{0, P({0, 0})}, {1, P({3, 0})}, {2, P({3, 3})}, {3, P({0, 3})},
                                  {4, P({1, 1})}, {5, P({2, 1})}, {6, P({2, 2})}, {7, P({1, 2})}};
    std::vector<std::vector<Vertex>> f;
    for (int i = 0; i < 4; ++i) {
        int o0 = i, o1 = (i + 1) % 4, i0 = 4 + i, i1 = 4 + (i + 1) % 4;
        f.push_back({o0, o1, i1});
        f.push_back({o0, i1, i0});
    }
    return make_geometric(SimplicialComplex::from_facets(f), xy);
}

} // namespace

TEST(LP, SimpleProblems)
{
    // max x + y  s.t.  x <= 2, y <= 3, x + y <= 4.
    auto r = lp_maximize(P({1, 1}), {P({1, 0}), P({0, 1}), P({1, 1})}, P({2, 3, 4}));
    ASSERT_EQ(r.status, LPStatus::Optimal);
    EXPECT_EQ(r.value, 4);
    auto inf = lp_maximize(P({1}), {P({1}), P({-1})}, P({1, -2}));
    EXPECT_EQ(inf.status, LPStatus::Infeasible);
    auto unb = lp_maximize(P({1}), {P({-1})}, P({0}));
    EXPECT_EQ(unb.status, LPStatus::Unbounded);
    auto eq = lp_maximize(P({0, 1}), {P({0, 1})}, P({5}), {P({1, -1})}, P({-2}));
    ASSERT_EQ(eq.status, LPStatus::Optimal);
    EXPECT_EQ(eq.x, P({3, 5}));
}

TEST(Geometry, RejectsImproperComplexes)
{
    EXPECT_THROW(make_geometric(SimplicialComplex::from_facets({{1, 2, 3}}),
                                {{1, P({0, 0})}, {2, P({1, 1})}, {3, P({2, 2})}}),
                 InputError);
    // Two overlapping triangles.
    EXPECT_THROW(make_geometric(SimplicialComplex::from_facets({{1, 2, 3}, {4, 5, 6}}),
                                {{1, P({0, 0})}, {2, P({2, 0})}, {3, P({0, 2})},
                                 {4, P({1, 1})}, {5, P({3, 1})}, {6, P({1, 3})}}),
                 InputError);
    EXPECT_TRUE(square().intersections_verified);
}

TEST(Geometry, GenericDirection)
{
    auto seg = make_geometric(SimplicialComplex::from_facets({{1, 2}}), {{1, P({0})}, {2, P({1})}});
    EXPECT_TRUE(is_generic_direction(P({1}), seg));
    auto edge = make_geometric(SimplicialComplex::from_facets({{1, 2}}), {{1, P({0, 0})}, {2, P({0, 1})}});
    EXPECT_FALSE(is_generic_direction(P({1, 0}), edge));
    auto tet = make_geometric(SimplicialComplex::from_facets({{1, 2, 3, 4}}),
                              {{1, P({0, 0, 0})}, {2, P({1, 0, 0})}, {3, P({0, 1, 0})}, {4, P({0, 0, 1})}});
    for (std::uint64_t seed = 0; seed < 10; ++seed)
        EXPECT_TRUE(is_generic_direction(perturb_to_generic(tet, seed), tet));
    EXPECT_EQ(perturb_to_generic(tet, 4), perturb_to_generic(tet, 4));
    auto nu = perturb_to_generic(seg, 0);
    EXPECT_NE(nu[0], 0);
}

TEST(Geometry, Kernel)
{
    auto k = kernel(square());
    ASSERT_FALSE(k.empty());
    EXPECT_TRUE(is_star_shaped_with_center(square(), P({0, 0})));
    EXPECT_TRUE(is_star_shaped_with_center(square(), {Q(1, 2), Q(1, 2)}));

    auto star = star_polygon();
    auto ks = kernel(star);
    ASSERT_FALSE(ks.empty());
    EXPECT_EQ(ks.constraints.size(), 10u);
    EXPECT_TRUE(is_star_shaped_with_center(star, *ks.witness));
    EXPECT_TRUE(is_star_shaped_with_center(star, P({0, 0})));
    EXPECT_FALSE(is_star_shaped_with_center(star, star.at(5)));
    EXPECT_FALSE(is_convex_complex(star));

    EXPECT_TRUE(kernel(annulus()).empty());
    auto not_pure = make_geometric(SimplicialComplex::from_facets({{1, 2, 3}, {3, 4}}),
                                   {{1, P({0, 0})}, {2, P({1, 0})}, {3, P({0, 1})}, {4, P({-1, 2})}});
    EXPECT_THROW(kernel(not_pure), Error);
}

TEST(Geometry, EmptyKernelHasNoCenterAmongSamples)
{
    auto a = annulus();
    std::mt19937 rng(1);
    std::uniform_int_distribution<long> d(0, 300);
    for (int i = 0; i < 100; ++i)
        EXPECT_FALSE(is_star_shaped_with_center(a, {Rational(d(rng), 100), Rational(d(rng), 100)}));
}

TEST(Geometry, LowerLink)
{
    auto tri = make_geometric(SimplicialComplex::from_facets({{1, 2, 3}}),
                              {{1, P({0, 0})}, {2, P({1, 0})}, {3, P({0, 1})}});
    Point nu = {Q(3, 1), Q(1, 1)};   // vertex 2 is nu-first
    EXPECT_EQ(lower_link(2, tri, nu), link(Face{2}, tri.complex));
    EXPECT_TRUE(lower_link(1, tri, nu).empty());
    auto path = make_geometric(SimplicialComplex::from_facets({{1, 2}, {2, 3}}),
                               {{1, P({0})}, {2, P({1})}, {3, P({2})}});
    EXPECT_EQ(lower_link(2, path, P({1})).facets(), (std::vector<Face>{{1}}));
    EXPECT_THROW(lower_link(2, square(), P({0, 1})), Error);

    // Lower links w.r.t. nu and -nu partition the link's vertices.
    auto star = star_polygon();
    Point g = perturb_to_generic(star, 3);
    for (Vertex v : star.complex.vertices()) {
        auto lo = lower_link(v, star, g);
        auto hi = lower_link(v, star, Rational(-1) * g);
        auto lk = link(Face{v}, star.complex);
        EXPECT_TRUE(is_subcomplex(lo, lk));
        EXPECT_EQ(lo.num_vertices() + hi.num_vertices(), lk.num_vertices());
        for (Vertex w : lo.vertices())
            EXPECT_FALSE(hi.has_vertex(w));
    }
}

TEST(Geometry, Hull)
{
    auto tet = convex_hull_facets({P({0, 0, 0}), P({1, 0, 0}), P({0, 1, 0}), P({0, 0, 1})});
    EXPECT_EQ(tet.size(), 4u);
    auto sq = convex_hull_facets({P({0, 0}), P({1, 0}), P({1, 1}), P({0, 1})});
    EXPECT_EQ(sq.size(), 4u);
    std::vector<Point> oct = {P({1, 0, 0}), P({-1, 0, 0}), P({0, 1, 0}), P({0, -1, 0}), P({0, 0, 1}), P({0, 0, -1})};
    auto ho = convex_hull_facets(oct);
    EXPECT_EQ(ho.size(), 8u);
    for (const auto& f : ho)
        for (const auto& p : oct)
            EXPECT_LE(dot(f.normal, p), f.offset);
    EXPECT_EQ(hull_volume(oct), Q(4, 3));
    auto cube = convex_hull_facets({P({0, 0, 0}), P({1, 0, 0}), P({0, 1, 0}), P({1, 1, 0}), P({0, 0, 1}),
                                    P({1, 0, 1}), P({0, 1, 1}), P({1, 1, 1})});
    EXPECT_EQ(cube.size(), 6u);
    EXPECT_THROW(convex_hull_facets({P({0, 0}), P({1, 1}), P({2, 2})}), Error);
}

TEST(Geometry, Convexity)
{
    EXPECT_TRUE(is_convex_complex(square()));
    auto tet = make_geometric(SimplicialComplex::from_facets({{1, 2, 3, 4}}),
                              {{1, P({0, 0, 0})}, {2, P({1, 0, 0})}, {3, P({0, 1, 0})}, {4, P({0, 0, 1})}});
    EXPECT_TRUE(is_convex_complex(tet));
    EXPECT_FALSE(kernel(tet).empty());
    auto four = make_geometric(SimplicialComplex::from_facets({{1, 2, 3, 4, 5}}),
                               {{1, P({0, 0, 0, 0})}, {2, P({1, 0, 0, 0})}, {3, P({0, 1, 0, 0})},
                                {4, P({0, 0, 1, 0})}, {5, P({0, 0, 0, 1})}});
    EXPECT_THROW(is_convex_complex(four), Error);
}

TEST(Geometry, HSplitting)
{
    auto seg = make_geometric(SimplicialComplex::from_facets({{1, 2}}), {{1, P({-1})}, {2, P({1})}});
    Hyperplane h0{P({1}), 0};
    auto ps = h_splitting_sd(seg, h0);
    EXPECT_EQ(ps.placement.at(ps.sd.vertex_of({1, 2})), P({0}));
    EXPECT_EQ(halfspace_restriction(ps.sd.complex, ps.placement, h0, HalfspaceSide::On).num_vertices(), 1u);
    auto up = halfspace_restriction(ps.sd.complex, ps.placement, h0, HalfspaceSide::Above);
    EXPECT_EQ(up.f_vector(), (std::vector<std::size_t>{2, 1}));

    auto tri = make_geometric(SimplicialComplex::from_facets({{1, 2, 3}}),
                              {{1, P({-1, -1})}, {2, P({-1, 1})}, {3, P({2, 0})}});
    Hyperplane hx{P({1, 0}), 0};
    auto pt = h_splitting_sd(tri, hx);
    EXPECT_EQ(pt.placement.at(pt.sd.vertex_of({1, 3})), (Point{0, Q(-2, 3)}));
    EXPECT_EQ(pt.placement.at(pt.sd.vertex_of({2, 3})), (Point{0, Q(2, 3)}));
    EXPECT_EQ(pt.placement.at(pt.sd.vertex_of({1, 2, 3})), P({0, 0}));
    auto on = halfspace_restriction(pt.sd.complex, pt.placement, hx, HalfspaceSide::On);
    EXPECT_EQ(on.f_vector(), (std::vector<std::size_t>{3, 2}));
    // Relative interior placement.
    for (std::size_t i = 0; i < pt.sd.labels.size(); ++i) {
        auto bc = barycentric_coordinates(tri.points(pt.sd.labels[i]), pt.placement.at(static_cast<Vertex>(i)));
        ASSERT_TRUE(bc.has_value());
        for (const auto& x : *bc)
            EXPECT_GT(x, 0);
    }
    EXPECT_THROW(h_splitting_sd(tri, Hyperplane{P({1, 0}), -1}), Error);

    auto right = make_geometric(SimplicialComplex::from_facets({{1, 2, 3}}),
                                {{1, P({1, 0})}, {2, P({2, 0})}, {3, P({1, 1})}});
    auto pr = h_splitting_sd(right, hx);
    auto pg = geometric_sd(right);
    EXPECT_EQ(pr.placement, pg.placement);
}

TEST(Geometry, GeometricSdVolume)
{
    auto tri = make_geometric(SimplicialComplex::from_facets({{1, 2, 3}}),
                              {{1, P({0, 0})}, {2, P({1, 0})}, {3, P({0, 1})}});
    auto g = geometric_sd(tri);
    EXPECT_EQ(g.placement.at(g.sd.vertex_of({1, 2, 3})), (Point{Q(1, 3), Q(1, 3)}));
    Rational area = 0;
    for (const auto& f : g.sd.complex.facets()) {
        std::vector<Point> pts;
        for (Vertex v : f)
            pts.push_back(g.placement.at(v));
        area += simplex_volume(pts);
    }
    EXPECT_EQ(area, Q(1, 2));
    auto seg = make_geometric(SimplicialComplex::from_facets({{1, 2}}), {{1, P({0})}, {2, P({1})}});
    EXPECT_EQ(geometric_sd(seg).placement.at(2), (Point{Q(1, 2)}));
}
