#include "oracles.hpp"

#include "sdc/canonical.hpp"
#include "sdc/error.hpp"
#include "sdc/nonevasive.hpp"

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

SimplicialComplex cycle(int n)
{
    std::vector<std::vector<Vertex>> e;
    for (int i = 0; i < n; ++i)
        e.push_back({i, (i + 1) % n});
    return SimplicialComplex::from_facets(e);
}

} // namespace

TEST(NonEvasive, Basics)
{
    auto p = is_nonevasive(SimplicialComplex::from_facets({{4}}));
    ASSERT_TRUE(p.found());
    EXPECT_TRUE(p.certificate->is_point());
    EXPECT_EQ(is_nonevasive(SimplicialComplex::from_facets({{1}, {2}})).kind, OutcomeKind::Refuted);
    EXPECT_EQ(is_nonevasive(cycle(6)).kind, OutcomeKind::Refuted);
    auto t = is_nonevasive(simplex(2));
    ASSERT_TRUE(t.found());
    EXPECT_TRUE(verify_ne(simplex(2), t.certificate));
}

TEST(NonEvasive, VerifierRejects)
{
    auto two = SimplicialComplex::from_facets({{1}, {2}});
    EXPECT_FALSE(verify_ne(two, NECertificate::point(1)));
    auto t = simplex(2);
    auto bad = NECertificate::node(1, NECertificate::point(2), NECertificate::point(2));
    auto r = verify_ne(t, bad);
    EXPECT_FALSE(r.ok);
    EXPECT_NE(r.message.find("lk1"), std::string::npos);
}

TEST(NonEvasive, ConesAreNonEvasive)
{
    std::mt19937 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        auto c = cone(50, random_complex(rng, 9, 6, 4));
        auto r = is_nonevasive(c);
        ASSERT_TRUE(r.found());
        EXPECT_TRUE(verify_ne(c, r.certificate));
        EXPECT_TRUE(verify_ne(c, cone_certificate(50, c)));
    }
}

TEST(NonEvasive, AgreesWithDefinition)
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        auto c = random_complex(rng, 7, 5, 3);
        auto r = is_nonevasive(c);
        ASSERT_NE(r.kind, OutcomeKind::BudgetExhausted);
        EXPECT_EQ(r.found(), oracle::nonevasive(c)) << facet_key(c);
        if (r.found())
            EXPECT_TRUE(verify_ne(c, r.certificate));
    }
}

TEST(NonEvasive, ToCollapse)
{
    auto pt = SimplicialComplex::from_facets({{3}});
    EXPECT_TRUE(ne_to_collapse(pt, NECertificate::point(3)).steps.empty());
    auto e = SimplicialComplex::from_facets({{1, 2}});
    auto ce = ne_to_collapse(e, is_nonevasive(e).certificate);
    EXPECT_EQ(ce.steps.size(), 1u);
    EXPECT_TRUE(verify_collapse(e, ce));

    std::mt19937 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        auto c = random_complex(rng, 8, 6, 4);
        auto r = is_nonevasive(c);
        if (!r.found())
            continue;
        EXPECT_TRUE(verify_collapse(c, ne_to_collapse(c, r.certificate)));
    }
    EXPECT_THROW(ne_to_collapse(e, NECertificate::point(1)), Error);
}

TEST(NonEvasive, DerivedSubdivisionOfCollapsibleIsNonEvasive)
{
    std::mt19937 rng(44);
    int tested = 0;
    for (int trial = 0; trial < 400 && tested < 50; ++trial) {
        auto c = random_complex(rng, 7, 4, 3);
        SearchOptions o;
        o.strategy = Strategy::Backtracking;
        if (!collapse_search(c, std::nullopt, o).found())
            continue;
        ++tested;
        auto s = sd(c).complex;
        auto r = is_nonevasive(s, 5'000'000);
        ASSERT_TRUE(r.found()) << facet_key(c);
        EXPECT_TRUE(verify_ne(s, r.certificate));
    }
    EXPECT_EQ(tested, 50);
}

TEST(NonEvasive, SdDeletionExamples)
{
    auto e = SimplicialComplex::from_facets({{1, 2}});
    auto s1 = sd_ne_deletion(e, 1, 1);
    EXPECT_EQ(s1.steps.size(), 1u);
    EXPECT_EQ(s1.final_complex.num_vertices(), 1u);
    EXPECT_TRUE(verify_ne_steps(s1));

    auto t = simplex(2);
    auto it = sd_m(t, 1);
    auto s2 = sd_ne_deletion(it, 1);
    ASSERT_EQ(s2.steps.size(), 3u);
    const auto& lv = it.levels[0];
    EXPECT_EQ(lv.labels[static_cast<std::size_t>(s2.steps[0].v)].size(), 2u);
    EXPECT_EQ(lv.labels[static_cast<std::size_t>(s2.steps[2].v)], (Face{1, 2, 3}));
    EXPECT_TRUE(verify_ne_steps(s2));
    EXPECT_EQ(s2.final_complex, it.restrict_to(delete_vertex(t, 1)));

    auto s0 = sd_ne_deletion(t, 1, 0);
    EXPECT_TRUE(s0.steps.empty());
}

TEST(NonEvasive, SdDeletionHigherIterates)
{
    for (int m = 1; m <= 3; ++m) {
        auto c = m < 3 ? simplex(2) : SimplicialComplex::from_facets({{1, 2}, {2, 3}});
        auto it = sd_m(c, m);
        for (Vertex v : c.vertices()) {
            auto seq = sd_ne_deletion(it, v);
            auto ok = verify_ne_steps(seq);
            EXPECT_TRUE(ok) << ok.message;
            EXPECT_EQ(seq.final_complex, it.restrict_to(delete_vertex(c, v)));
        }
    }
}

TEST(NonEvasive, LiftToSubdivision)
{
    std::mt19937 rng(5);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 25; ++trial) {
        auto c = random_complex(rng, 7, 4, 3);
        auto r = is_nonevasive(c);
        if (!r.found())
            continue;
        ++tested;
        auto s = sd(c);
        auto lifted = lift_ne_to_sd(s, c, r.certificate);
        auto ok = verify_ne(s.complex, lifted);
        EXPECT_TRUE(ok) << ok.message;
    }
    EXPECT_GT(tested, 10);
}

TEST(NonEvasive, LiftStepSequences)
{
    // C ↘_NE C' by deleting vertices whose links are non-evasive, then lifted.
    std::mt19937 rng(77);
    int tested = 0;
    for (int trial = 0; trial < 300 && tested < 20; ++trial) {
        auto c = random_complex(rng, 8, 5, 3);
        NEStepSequence seq;
        seq.start = c;
        SimplicialComplex cur = c;
        for (Vertex v : c.vertices()) {
            if (cur.num_vertices() <= 2)
                break;
            auto r = is_nonevasive(link(Face{v}, cur));
            if (!r.found())
                continue;
            seq.steps.push_back({v, r.certificate});
            cur = delete_vertex(cur, v);
        }
        seq.final_complex = cur;
        if (seq.steps.empty())
            continue;
        ASSERT_TRUE(verify_ne_steps(seq));
        ++tested;
        auto s = sd(c);
        auto lifted = lift_ne_steps(s, seq);
        auto ok = verify_ne_steps(lifted);
        EXPECT_TRUE(ok) << ok.message;
        std::vector<Vertex> keep;
        for (std::size_t i = 0; i < s.labels.size(); ++i)
            if (cur.contains(s.labels[i]))
                keep.push_back(static_cast<Vertex>(i));
        EXPECT_EQ(lifted.final_complex, restriction(s.complex, keep));
    }
    EXPECT_GT(tested, 10);
}
