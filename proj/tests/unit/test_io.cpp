#include "sdc/error.hpp"
#include "sdc/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

using namespace sdc;

namespace {

Json parse(const char* text)
{
    return Json::parse(text);
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("sdc_test_" + name)).string();
}

} // namespace

TEST(ComplexFile, MinimalFile)
{
    auto f = complex_from_json(parse(R"({"facets": [[1, 2, 3]]})"));
    EXPECT_FALSE(f.geometric());
    EXPECT_EQ(f.complex, SimplicialComplex::from_facets({{1, 2, 3}}));
}

TEST(ComplexFile, ExactCoordinates)
{
    auto f = complex_from_json(parse(R"({"format": "sdc-complex", "version": 1,
        "vertices": [{"id": 1, "coords": ["0", "0"]}, {"id": 2, "coords": ["1/3", "0"]},
                     {"id": 3, "coords": ["0", "-2/6"]}],
        "facets": [[1, 2, 3]]})"));
    ASSERT_TRUE(f.geometric());
    EXPECT_EQ(f.coords.at(2)[0], Rational(1, 3));
    EXPECT_EQ(f.coords.at(3)[1], Rational(-1, 3));
    auto gc = f.to_geometric();
    EXPECT_EQ(gc.ambient_dim, 2u);
}

TEST(ComplexFile, Errors)
{
    const char* bad[] = {
        R"({"vertices": [{"id": 1, "coords": ["0"]}, {"id": 2}], "facets": [[1, 2]]})",
        R"({"vertices": [{"id": 1}, {"id": 1}], "facets": [[1]]})",
        R"({"vertices": [{"id": 1}], "facets": [[1, 2]]})",
        R"({"vertices": [{"id": 1, "coords": ["1/0"]}], "facets": [[1]]})",
        R"({"vertices": [{"id": 1, "coords": ["0.5"]}], "facets": [[1]]})",
        R"({"facets": [[1, 1]]})",
        R"({"version": 7, "facets": [[1]]})",
        R"({"format": "sdc-certificate", "facets": [[1]]})",
        R"({"vertices": []})",
    };
    for (const char* text : bad)
        EXPECT_THROW(complex_from_json(parse(text)), InputError) << text;
}

TEST(ComplexFile, DegenerateCoordinatesRejectedOnValidation)
{
    auto f = complex_from_json(parse(R"({"vertices": [{"id": 1, "coords": ["0", "0"]},
        {"id": 2, "coords": ["1", "1"]}, {"id": 3, "coords": ["2", "2"]}], "facets": [[1, 2, 3]]})"));
    EXPECT_THROW(f.to_geometric(), InputError);
}

TEST(ComplexFile, RoundTripOverGenerators)
{
    struct Case {
        std::string name;
        GenParams p;
    };
    std::vector<Case> cases;
    for (int d = 1; d <= 3; ++d) {
        GenParams p;
        p.d = d;
        cases.push_back({"simplex", p});
        cases.push_back({"boundary-simplex", p});
    }
    GenParams sd2;
    sd2.d = 2;
    sd2.m = 2;
    cases.push_back({"sd-iterate", sd2});
    cases.push_back({"dunce-hat", {}});
    cases.push_back({"bing-house", {}});
    cases.push_back({"star-polygon", {}});
    cases.push_back({"octahedron-solid", {}});
    cases.push_back({"spiky-octahedron", {}});
    GenParams n7;
    n7.n = 7;
    cases.push_back({"stacked-3-polytope", n7});
    cases.push_back({"path", n7});
    cases.push_back({"random-collapsible", n7});
    for (const auto& c : cases)
        for (std::uint64_t seed : {0u, 1u, 2u}) {
            auto f = generate(c.name, c.p, seed);
            auto back = complex_from_json(Json::parse(to_json(f).dump()));
            EXPECT_EQ(back, f) << c.name;
        }
}

TEST(ComplexFile, ReadWriteFile)
{
    auto f = generate("octahedron-solid", {}, 0);
    std::string path = temp_path("octa.json");
    write_json(path, to_json(f));
    EXPECT_EQ(read_complex(path), f);
    std::remove(path.c_str());
    EXPECT_THROW(read_complex(temp_path("missing.json")), InputError);
}

TEST(Generators, Simplex)
{
    GenParams p;
    p.d = 3;
    auto f = generate("simplex", p, 0);
    EXPECT_EQ(f.complex.facets(), (std::vector<Face>{{1, 2, 3, 4}}));
    EXPECT_EQ(f.coords.at(1), (Point{0, 0, 0}));
    EXPECT_EQ(f.coords.at(3), (Point{0, 1, 0}));
}

TEST(Generators, SdIterateCounts)
{
    GenParams p;
    p.d = 2;
    p.m = 2;
    EXPECT_EQ(generate("sd-iterate", p, 0).complex.num_facets(), 36u);
    EXPECT_NO_THROW(generate("sd-iterate", p, 0).to_geometric());
}

TEST(Generators, DunceHatHasNoFreeFace)
{
    auto f = generate("dunce-hat", {}, 0);
    EXPECT_EQ(f.complex.num_vertices(), 8u);
    EXPECT_EQ(f.complex.euler_characteristic(), 1);
    EXPECT_TRUE(free_faces(f.complex).empty());
}

TEST(Generators, BingHouseHasNoFreeFace)
{
    auto f = generate("bing-house", {}, 0);
    EXPECT_EQ(f.complex.dim(), 2);
    EXPECT_EQ(f.complex.euler_characteristic(), 1);
    EXPECT_TRUE(f.complex.is_connected());
    EXPECT_TRUE(free_faces(f.complex).empty());
    EXPECT_NO_THROW(f.to_geometric());
}

TEST(Generators, StarPolygon)
{
    GenParams p;
    p.n = 5;
    auto gc = generate("star-polygon", p, 0).to_geometric();
    EXPECT_EQ(gc.complex.num_vertices(), 10u);
    EXPECT_FALSE(kernel(gc).empty());
    EXPECT_FALSE(is_convex_complex(gc));
}

TEST(Generators, SpikyOctahedron)
{
    for (int spikes = 1; spikes <= 4; ++spikes) {
        GenParams p;
        p.spikes = spikes;
        auto gc = generate("spiky-octahedron", p, 0).to_geometric();
        EXPECT_EQ(gc.complex.num_facets(), static_cast<std::size_t>(8 + spikes));
        EXPECT_FALSE(kernel(gc).empty());
        EXPECT_FALSE(is_convex_complex(gc));
    }
}

TEST(Generators, StackedPolytopesAreConvex)
{
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        GenParams p;
        p.n = 8;
        auto gc = generate("stacked-3-polytope", p, seed).to_geometric();
        EXPECT_EQ(gc.complex.num_vertices(), 8u);
        EXPECT_EQ(gc.complex.num_facets(), 5u);
        EXPECT_TRUE(is_convex_complex(gc));
    }
}

TEST(Generators, RandomCollapsibleIsDeterministic)
{
    GenParams p;
    p.n = 7;
    auto a = generate("random-collapsible", p, 9);
    EXPECT_EQ(a, generate("random-collapsible", p, 9));
    EXPECT_EQ(a.complex.num_vertices(), 7u);
    auto r = collapse_search(a.complex, std::nullopt, {Strategy::Backtracking});
    EXPECT_TRUE(r.found());
}

TEST(Generators, UnknownName)
{
    EXPECT_THROW(generate("klein-bottle", {}, 0), InputError);
}

TEST(Certificates, CollapseRoundTripAndCheck)
{
    auto c = SimplicialComplex::from_facets({{1, 2, 3}});
    auto r = collapse_search(c, std::nullopt);
    ASSERT_TRUE(r.found());
    Json j = collapse_to_json(c, *r.certificate);
    auto back = collapse_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.steps, r.certificate->steps);
    EXPECT_EQ(back.target, r.certificate->target);
    auto res = check_certificate(j);
    EXPECT_TRUE(res.ok) << res.message;
    EXPECT_EQ(res.kind, "collapse");

    Json tampered = j;
    tampered["complex"] = Json::array({Json::array({1, 2, 4})});
    EXPECT_FALSE(check_certificate(tampered).ok);
    tampered = j;
    tampered["steps"].erase(0);
    EXPECT_FALSE(check_certificate(tampered).ok);
}

TEST(Certificates, NeRoundTripAndCheck)
{
    auto c = SimplicialComplex::from_facets({{1, 2, 3}, {3, 4}, {4, 5, 6}});
    auto r = is_nonevasive(c);
    ASSERT_TRUE(r.found());
    Json j = ne_to_json(c, r.certificate);
    auto back = ne_from_json(Json::parse(j.dump()));
    EXPECT_TRUE(verify_ne(c, back).ok);
    EXPECT_EQ(back->size(), r.certificate->size());
    EXPECT_TRUE(check_certificate(j).ok);

    Json wrong = j;
    wrong["complex"] = facets_to_json(SimplicialComplex::from_facets({{1, 2}, {2, 3}, {1, 3}}));
    wrong["complex_hash"] = complex_hash(SimplicialComplex::from_facets({{1, 2}, {2, 3}, {1, 3}}));
    EXPECT_FALSE(check_certificate(wrong).ok);
}

TEST(Certificates, NeStepsRoundTrip)
{
    auto seq = sd_ne_deletion(SimplicialComplex::from_facets({{1, 2, 3}}), 1, 1);
    Json j = ne_steps_to_json(seq);
    auto back = ne_steps_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.start, seq.start);
    EXPECT_EQ(back.final_complex, seq.final_complex);
    EXPECT_EQ(back.steps.size(), seq.steps.size());
    EXPECT_TRUE(check_certificate(j).ok);
}

TEST(Certificates, ShellingCheck)
{
    GenParams p;
    p.d = 3;
    auto gc = generate("simplex", p, 0).to_geometric();
    Polytope poly = polytope_from_points(gc.coords);
    auto r = bruggesser_mani_shelling(poly, {1, 2});
    Json j = shelling_to_json(poly, r);
    auto res = check_certificate(Json::parse(j.dump()));
    EXPECT_TRUE(res.ok) << res.message;

    Json swapped = j;
    std::swap(swapped["order"][0], swapped["order"][3]);
    EXPECT_FALSE(check_certificate(swapped).ok);
}

TEST(Certificates, PipelineReport)
{
    GenParams p;
    p.d = 2;
    auto gc = generate("simplex", p, 0).to_geometric();
    auto rep = convex_collapse_pipeline(gc);
    ASSERT_TRUE(rep.ok());
    Json j = report_to_json(rep);
    EXPECT_EQ(j["kind"], "collapse");
    EXPECT_EQ(j["report"]["theorem"], rep.theorem);
    EXPECT_TRUE(check_certificate(j).ok);
    EXPECT_EQ(j.dump(), report_to_json(convex_collapse_pipeline(gc)).dump());
}

TEST(Certificates, MalformedIsInputError)
{
    EXPECT_THROW(check_certificate(parse(R"({"format": "sdc-certificate", "kind": "collapse"})")), InputError);
}

TEST(Off, Export)
{
    GenParams p;
    p.d = 2;
    auto off = to_off(generate("simplex", p, 0));
    EXPECT_EQ(off.rfind("OFF\n", 0), 0u);
    EXPECT_NE(off.find("3 1 0\n"), std::string::npos);
    EXPECT_NE(off.find("3 0 1 2\n"), std::string::npos);
    EXPECT_THROW(to_off(generate("dunce-hat", {}, 0)), InputError);
}

TEST(Hash, StableAndSensitive)
{
    auto a = SimplicialComplex::from_facets({{1, 2, 3}});
    EXPECT_EQ(complex_hash(a).size(), 16u);
    EXPECT_EQ(complex_hash(a), complex_hash(SimplicialComplex::from_facets({{3, 2, 1}})));
    EXPECT_NE(complex_hash(a), complex_hash(SimplicialComplex::from_facets({{1, 2, 4}})));
}
