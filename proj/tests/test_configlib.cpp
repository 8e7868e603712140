#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "arrlab/configlib.hpp"
#include "arrlab/idealdims.hpp"

using namespace arrlab;

TEST_CASE("builder point counts") {
    CHECK(build_fermat(2, 2).size() == 6);
    CHECK(build_fermat(5, 2).size() == 15);
    CHECK(build_ceva_extended(2, 2).size() == 9);
    CHECK(build_ceva_extended(5, 2).size() == 18);
    CHECK(build_ceva_extended(3, 3).size() == 22);
    CHECK(build_projective_space(2, 2).size() == 7);
    CHECK(build_projective_space(3, 2).size() == 13);
    CHECK(build_projective_space(4, 2).size() == 21);
    CHECK(build_projective_space(9, 1).size() == 10);
    CHECK_THROWS_AS(build_projective_space(6, 2), UsageError);
    CHECK_THROWS_AS(build_fermat(1, 2), UsageError);
}

TEST_CASE("extended family is the union of the base family and the simplex") {
    Configuration f = build_fermat(3, 2);
    Configuration c = build_ceva_extended(3, 2);
    for (const auto& p : f.points) {
        bool found = false;
        for (const auto& q : c.points)
            if (p == q) found = true;
        CHECK(found);
    }
    CHECK(c.size() == f.size() + 3);
}

TEST_CASE("direct sums pad coordinates and unify fields") {
    Configuration a = build_ceva_extended(2, 2);
    Configuration b = build_ceva_extended(7, 2);
    Configuration s = direct_sum(a, b);
    CHECK(s.size() == 33);
    CHECK(s.ambient_dim == 5);
    CHECK(s.field->kind == FieldKind::Cyclotomic);
    CHECK(s.field->m == 14);
    // left block lives in the first three coordinates
    for (long i = 0; i < a.size(); ++i)
        for (long j = 3; j <= 5; ++j) CHECK(s.points[i].coords[j].is_zero());
    for (long i = a.size(); i < s.size(); ++i)
        for (long j = 0; j <= 2; ++j) CHECK(s.points[i].coords[j].is_zero());
    // a rational configuration embeds into a cyclotomic one
    Configuration g = build_generic(3, 2, 2);
    CHECK(direct_sum(g, b).field->m == 7);
    CHECK_THROWS_AS(direct_sum(a, build_projective_space(3, 2)), UsageError);
}

TEST_CASE("splitting type of a double direct sum") {
    Configuration c2 = build_ceva_extended(2, 2);
    Configuration s = direct_sum(c2, c2);
    CHECK(splitting_type(s, {42, 43, 44}) == std::vector<long>{1, 3, 3, 5, 5});
}

TEST_CASE("deterministic generic points in linearly general position") {
    Configuration a = build_generic(5, 2, 7);
    Configuration b = build_generic(5, 2, 7);
    CHECK(a.points == b.points);
    CHECK(build_generic(5, 2, 8).points != a.points);
    // every 3-subset has full rank
    for (long i = 0; i < 5; ++i)
        for (long j = i + 1; j < 5; ++j)
            for (long k = j + 1; k < 5; ++k)
                CHECK(span_dim(a, {i, j, k}) == 2);
    Configuration c = build_generic(6, 3, 1);
    for (long drop = 0; drop < 6; ++drop) {
        std::vector<long> idx;
        for (long i = 0; i < 6; ++i)
            if (i != drop && (long)idx.size() < 4) idx.push_back(i);
        CHECK(span_dim(c, idx) == 3);
    }
}

TEST_CASE("JSON round trip") {
    for (const Configuration& z :
         {build_ceva_extended(5, 2), build_projective_space(9, 2),
          build_generic(4, 3, 3)}) {
        Configuration back = parse_configuration(serialize_configuration(z));
        CHECK(back.ambient_dim == z.ambient_dim);
        CHECK(*back.field == *z.field);
        CHECK(back.points == z.points);
        CHECK(back.name == z.name);
    }
}

TEST_CASE("parse errors carry position diagnostics") {
    CHECK_THROWS_WITH_AS(
        parse_configuration(R"({"field":{"kind":"rationals"},"ambient_dim":2,
                               "points":[["1","0","0"],["1","0"]]})"),
        doctest::Contains("point 2"), UsageError);
    CHECK_THROWS_WITH_AS(
        parse_configuration(R"({"field":{"kind":"rationals"},"ambient_dim":2,
                               "points":[["1","0","x"]]})"),
        doctest::Contains("coordinate 3"), UsageError);
    CHECK_THROWS_AS(parse_configuration("[1,2]"), UsageError);
    CHECK_THROWS_AS(parse_configuration("{\"field\":{\"kind\":\"quaternion\"}}"),
                    UsageError);
    CHECK_THROWS_AS(parse_configuration("not json"), UsageError);
}

TEST_CASE("file round trip") {
    Configuration z = build_ceva_extended(3, 2);
    std::string path = "configlib_roundtrip_tmp.json";
    save_configuration(z, path);
    Configuration back = load_configuration(path);
    CHECK(back.points == z.points);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_configuration("no/such/file.json"), UsageError);
}

TEST_CASE("serialization is byte-stable") {
    Configuration z = build_ceva_extended(2, 2);
    CHECK(serialize_configuration(z) == serialize_configuration(z));
}
