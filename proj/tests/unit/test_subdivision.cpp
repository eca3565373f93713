#include "sdc/error.hpp"
#include "sdc/subdivision.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace sdc;

namespace {

SimplicialComplex simplex(int n)
{
    Face f;
    for (int i = 1; i <= n + 1; ++i)
        f.push_back(i);
    return SimplicialComplex::from_facets({f});
}

// Maximal chains counted directly from the face poset.
std::size_t count_maximal_chains(const SimplicialComplex& c)
{
    std::size_t total = 0;
    std::function<void(const Face&)> extend = [&](const Face& top) {
        bool grew = false;
        for (const auto& f : c.all_faces())
            if (f.size() == top.size() + 1 && is_subface(top, f)) {
                grew = true;
                extend(f);
            }
        if (!grew)
            ++total;
    };
    for (const auto& v : c.faces(0))
        extend(v);
    return total;
}

} // namespace

TEST(Subdivision, SpecExamples)
{
    auto e = sd(SimplicialComplex::from_facets({{1, 2}}));
    EXPECT_EQ(e.complex.f_vector(), (std::vector<std::size_t>{3, 2}));
    auto t = sd(simplex(2));
    EXPECT_EQ(t.complex.f_vector(), (std::vector<std::size_t>{7, 12, 6}));
    auto cyc = sd(boundary_complex(simplex(2)));
    EXPECT_EQ(cyc.complex.f_vector(), (std::vector<std::size_t>{6, 6}));
    EXPECT_TRUE(boundary_complex(cyc.complex).empty());

    EXPECT_EQ(sd_m(simplex(2), 0).complex, simplex(2));
    EXPECT_EQ(sd_m(simplex(2), 2).complex.num_facets(), 36u);
    EXPECT_EQ(sd_m(simplex(3), 1).complex.num_facets(), 24u);
    EXPECT_THROW(sd_m(simplex(3), 3, 1000), Error);
}

TEST(Subdivision, CarriersAndChains)
{
    auto t = sd(simplex(2));
    for (std::size_t i = 0; i < t.labels.size(); ++i)
        EXPECT_EQ(t.carrier(Face{static_cast<Vertex>(i)}), t.labels[i]);
    for (const auto& f : t.complex.facets()) {
        auto ch = t.chain(f);
        for (std::size_t k = 1; k < ch.size(); ++k)
            EXPECT_TRUE(is_subface(ch[k - 1], ch[k]));
        EXPECT_EQ(ch.back(), (Face{1, 2, 3}));
    }
    auto it = sd_m(simplex(2), 2);
    for (Vertex v : it.complex.vertices())
        EXPECT_TRUE(simplex(2).contains(it.carrier(Face{v})));
}

TEST(Subdivision, FacetCountMatchesChainCount)
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<int> vd(0, 8), sz(1, 4);
        std::vector<std::vector<Vertex>> lists;
        for (int i = 0; i < 5; ++i) {
            std::vector<Vertex> f;
            int s = sz(rng);
            for (int k = 0; k < s; ++k)
                f.push_back(vd(rng));
            lists.push_back(f);
        }
        auto c = SimplicialComplex::from_facets(lists);
        auto s = sd(c);
        EXPECT_EQ(s.complex.num_facets(), sd_facet_count(c));
        EXPECT_EQ(s.complex.num_facets(), count_maximal_chains(c));
        EXPECT_EQ(s.complex.euler_characteristic(), c.euler_characteristic());
    }
}

TEST(Subdivision, DerivedNeighborhood)
{
    auto c = simplex(2);
    auto s = sd(c);
    auto n1 = derived_neighborhood(s, SimplicialComplex::from_facets({{1}}));
    EXPECT_EQ(n1.num_facets(), 2u);
    for (const auto& f : n1.facets())
        EXPECT_TRUE(contains_vertex(f, s.vertex_of(Face{1})));
    EXPECT_EQ(derived_neighborhood(s, boundary_complex(c)), s.complex);
    EXPECT_TRUE(derived_neighborhood(s, SimplicialComplex()).empty());
    EXPECT_THROW(derived_neighborhood(s, SimplicialComplex::from_facets({{1, 4}})), Error);

    // N(D, C) contains sd D and lies in sd C.
    auto d = SimplicialComplex::from_facets({{1, 2}});
    auto n = derived_neighborhood(s, d);
    std::vector<Vertex> dv;
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        if (d.contains(s.labels[i]))
            dv.push_back(static_cast<Vertex>(i));
    EXPECT_TRUE(is_subcomplex(restriction(s.complex, dv), n));
    EXPECT_TRUE(is_subcomplex(n, s.complex));
}

TEST(Subdivision, DerivedOrderEdge)
{
    auto c = SimplicialComplex::from_facets({{1, 2}});
    // Seed in deletion order: 2 first, then 1.
    auto o = derived_order(c, {Face{2}, Face{1}});
    EXPECT_EQ(o.order, (std::vector<Face>{{2}, {1, 2}, {1}}));
    EXPECT_TRUE(respects_derived_rules(o, c));

    auto single = derived_order(c, {Face{1}});
    EXPECT_LT(single.rank_of({1, 2}), single.rank_of({1}));
    EXPECT_LT(single.rank_of({2}), single.rank_of({1, 2}));
}

TEST(Subdivision, DerivedOrderTriangle)
{
    auto c = simplex(2);
    auto o = derived_order(c, {Face{3}, Face{2}, Face{1}});
    EXPECT_TRUE(respects_derived_rules(o, c));
    for (const auto& sigma : c.all_faces()) {
        if (sigma.size() < 2)
            continue;
        Vertex least = sigma.front();
        for_each_nonempty_subface(sigma, [&](const Face& tau) {
            if (tau.size() == sigma.size())
                return;
            if (tau == Face{least})
                EXPECT_LT(o.rank_of(sigma), o.rank_of(tau));
            else
                EXPECT_LT(o.rank_of(tau), o.rank_of(sigma));
        });
    }
    EXPECT_THROW(derived_order(c, {Face{1, 2}, Face{2}}), Error);
    EXPECT_THROW(derived_order(c, {Face{4}}), Error);
}
