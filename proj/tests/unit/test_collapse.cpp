#include "oracles.hpp"

#include "sdc/canonical.hpp"
#include "sdc/collapse.hpp"
#include "sdc/error.hpp"

#include <gtest/gtest.h>

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

SimplicialComplex random_complex(std::mt19937& rng, int nv, int nf, int max_size)
{
    std::uniform_int_distribution<int> vd(0, nv - 1), sd(2, max_size);
    std::vector<std::vector<Vertex>> lists;
    for (int i = 0; i < nf; ++i) {
        std::vector<Vertex> f;
        int s = sd(rng);
        for (int k = 0; k < s; ++k)
            f.push_back(vd(rng));
        lists.push_back(f);
    }
    return SimplicialComplex::from_facets(lists);
}

} // namespace

TEST(Collapse, FreeFaces)
{
    EXPECT_EQ(free_faces(simplex(2)).size(), 3u);
    EXPECT_TRUE(free_faces(boundary_complex(simplex(2))).empty());
    EXPECT_EQ(free_faces(SimplicialComplex::from_facets({{1, 2}})).size(), 2u);
}

TEST(Collapse, ElementaryCollapse)
{
    auto t = simplex(2);
    EXPECT_EQ(elementary_collapse(t, {1, 2}).facets(), (std::vector<Face>{{1, 3}, {2, 3}}));
    EXPECT_EQ(elementary_collapse(SimplicialComplex::from_facets({{1, 2}}), {1}).facets(), (std::vector<Face>{{2}}));
    EXPECT_THROW(elementary_collapse(t, {1}), Error);
}

TEST(Collapse, SearchExamples)
{
    for (auto strat : {Strategy::Greedy, Strategy::Backtracking}) {
        SearchOptions o;
        o.strategy = strat;
        auto r = collapse_search(simplex(3), std::nullopt, o);
        ASSERT_TRUE(r.found());
        EXPECT_TRUE(verify_collapse(simplex(3), *r.certificate));
        EXPECT_EQ(r.certificate->target.num_vertices(), 1u);

        auto b = collapse_search(boundary_complex(simplex(3)), std::nullopt, o);
        EXPECT_EQ(b.kind, OutcomeKind::Refuted);
        EXPECT_EQ(b.reason, RefutationReason::NoFreeFace);
    }
    EXPECT_THROW(collapse_search(simplex(2), SimplicialComplex::from_facets({{4}}), {}), Error);
}

TEST(Collapse, SearchToSubcomplex)
{
    auto t = simplex(3);
    auto target = SimplicialComplex::from_facets({{1, 2, 3}});
    auto r = collapse_search(t, target, {});
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.certificate->target, target);
    EXPECT_TRUE(verify_collapse(t, *r.certificate));
}

TEST(Collapse, VerifierRejectsBadCertificates)
{
    auto t = simplex(2);
    CollapseCertificate good{{{{1, 2}, {1, 2, 3}}, {{1}, {1, 3}}, {{2}, {2, 3}}}, SimplicialComplex::from_facets({{3}})};
    EXPECT_TRUE(verify_collapse(t, good));
    auto swapped = good;
    std::swap(swapped.steps[0], swapped.steps[1]);
    auto r = verify_collapse(t, swapped);
    EXPECT_FALSE(r.ok);
    EXPECT_EQ(r.failed_step, 0u);
    auto wrong_target = good;
    wrong_target.target = SimplicialComplex::from_facets({{1}});
    auto w = verify_collapse(t, wrong_target);
    EXPECT_FALSE(w.ok);
    EXPECT_EQ(w.failed_step, 3u);
}

TEST(Collapse, CertificatesAlwaysVerify)
{
    std::mt19937 rng(2024);
    int found = 0;
    for (int trial = 0; trial < 220; ++trial) {
        auto c = random_complex(rng, 8, 6, 4);
        SearchOptions o;
        o.strategy = trial % 2 ? Strategy::Greedy : Strategy::Backtracking;
        o.seed = static_cast<std::uint64_t>(trial);
        o.budget = 20000;
        auto r = collapse_search(c, std::nullopt, o);
        if (r.found()) {
            ++found;
            EXPECT_TRUE(verify_collapse(c, *r.certificate)) << facet_key(c);
        }
    }
    EXPECT_GT(found, 50);
}

TEST(Collapse, ExhaustiveAgreesWithBruteForce)
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        auto c = random_complex(rng, 7, 5, 3);
        SearchOptions o;
        o.strategy = Strategy::Backtracking;
        o.budget = 5'000'000;
        auto r = collapse_search(c, std::nullopt, o);
        ASSERT_NE(r.kind, OutcomeKind::BudgetExhausted);
        EXPECT_EQ(r.found(), oracle::collapsible(c)) << facet_key(c);
    }
}

TEST(Collapse, ConesCollapse)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto base = random_complex(rng, 8, 5, 3);
        auto c = cone(100, base);
        auto direct = cone_collapse(100, base, SimplicialComplex());
        EXPECT_TRUE(verify_collapse(c, direct));
        auto r = collapse_search(c, std::nullopt, {});
        ASSERT_TRUE(r.found());
        EXPECT_TRUE(verify_collapse(c, *r.certificate));
    }
}

TEST(Collapse, ConeOntoSubcone)
{
    auto base = SimplicialComplex::from_facets({{1, 2}, {2, 3}, {3, 1}});
    auto sub = SimplicialComplex::from_facets({{1, 2}});
    auto cert = cone_collapse(9, base, sub);
    EXPECT_EQ(cert.target, cone(9, sub));
    EXPECT_TRUE(verify_collapse(cone(9, base), cert));
}

TEST(Collapse, LinkLifting)
{
    auto c = simplex(3);
    auto lk = link(Face{1}, c);
    auto lc = collapse_search(lk, std::nullopt, {});
    ASSERT_TRUE(lc.found());
    auto cert = remove_vertex_by_link_collapse(c, 1, *lc.certificate);
    EXPECT_TRUE(verify_collapse(c, cert));
    EXPECT_EQ(cert.target, delete_vertex(c, 1));

    auto partial = collapse_search(lk, SimplicialComplex::from_facets({{2, 3}}), {});
    ASSERT_TRUE(partial.found());
    auto lifted = lift_link_collapse(c, 1, *partial.certificate);
    EXPECT_TRUE(verify_collapse(c, lifted));
}

TEST(Collapse, UnionLemma)
{
    auto c = simplex(2);
    auto cp = SimplicialComplex::from_facets({{2, 3}});
    auto r = collapse_search(c, cp, {});
    ASSERT_TRUE(r.found());
    auto d = SimplicialComplex::from_facets({{2, 3, 4}});
    auto u = collapse_union_lemma(c, *r.certificate, d);
    EXPECT_EQ(u.target, d);
    EXPECT_TRUE(verify_collapse(complex_union(c, d), u));

    auto same = collapse_union_lemma(c, *r.certificate, cp);
    EXPECT_EQ(same.steps, r.certificate->steps);

    auto bigger = SimplicialComplex::from_facets({{1, 2, 4}, {2, 3, 4}});
    EXPECT_THROW(collapse_union_lemma(c, *r.certificate, bigger), Error);
}

TEST(Collapse, PolytopalCellReplay)
{
    // A square cell with its four edges: collapse the cell through one edge.
    FacePoset p;
    for (Vertex v : {1, 2, 3, 4})
        p.add({v});
    for (Face e : std::vector<Face>{{1, 2}, {2, 3}, {3, 4}, {1, 4}})
        p.add(e);
    p.add({1, 2, 3, 4});
    FacePoset target;
    for (Vertex v : {1, 2, 3, 4})
        target.add({v});
    for (Face e : std::vector<Face>{{2, 3}, {3, 4}, {1, 4}})
        target.add(e);
    EXPECT_TRUE(verify_collapse(p, {{{1, 2}, {1, 2, 3, 4}}}, target));
    EXPECT_FALSE(verify_collapse(p, {{{1}, {1, 2, 3, 4}}}, target));
}
