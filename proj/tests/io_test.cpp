#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "barron/io.hpp"
#include "test_util.hpp"

using namespace barron;

TEST_CASE("measure JSON round trip") {
    std::mt19937_64 rng(3);
    const auto mu = testutil::random_atomic_measure(rng, 3, 12);
    const std::string text = measure_to_json(mu);
    const auto back = measure_from_json(text);
    REQUIRE(back.atom_count() == mu.atom_count());
    CHECK(back.dim() == mu.dim());
    for (std::size_t i = 0; i < mu.atom_count(); ++i) {
        CHECK(back.atom_weight(i) == mu.atom_weight(i));
        for (int k = 0; k < mu.ambient(); ++k)
            CHECK(back.atom_dir(i)[k] == doctest::Approx(mu.atom_dir(i)[k]).epsilon(1e-15));
    }
    // serialization is deterministic
    CHECK(measure_to_json(back) == text);
}

TEST_CASE("measure JSON validation") {
    SUBCASE("non-unit directions are rejected on load") {
        const std::string bad = R"({"dim":1,"atoms":[{"weight":1.0,"dir":[1.0,0.5]}]})";
        CHECK_THROWS_WITH_AS(measure_from_json(bad), doctest::Contains("unit"),
                             std::runtime_error);
    }
    SUBCASE("slightly off-unit within 1e-9 is accepted and renormalized") {
        const std::string ok =
            R"({"dim":1,"atoms":[{"weight":1.0,"dir":[1.0000000001,0.0]}]})";
        const auto mu = measure_from_json(ok);
        CHECK(mu.atom_count() == 1);
    }
    SUBCASE("malformed JSON throws a parse error") {
        CHECK_THROWS(measure_from_json("{\"dim\": 2, \"atoms\": ["));
    }
    SUBCASE("wrong direction arity") {
        const std::string bad = R"({"dim":2,"atoms":[{"weight":1.0,"dir":[1.0,0.0]}]})";
        CHECK_THROWS_WITH_AS(measure_from_json(bad), doctest::Contains("dim+1"),
                             std::runtime_error);
    }
}

TEST_CASE("profile JSON round trip") {
    Profile1D p;
    p.f0 = 0.25;
    p.df0 = -1.5;
    p.d2_atoms = {{-1.0, 1.0}, {0.5, -2.0}};
    p.d2_nodes = {{0.1, 0.01}};
    const auto text = profile_to_json(p);
    const auto back = profile_from_json(text);
    CHECK(back.f0 == p.f0);
    CHECK(back.df0 == p.df0);
    REQUIRE(back.d2_atoms.size() == 2);
    CHECK(back.d2_atoms[1].second == -2.0);
    REQUIRE(back.d2_nodes.size() == 1);
    CHECK(profile_to_json(back) == text);
}

TEST_CASE("points CSV") {
    SUBCASE("write then read with a value column") {
        const std::vector<double> pts = {1.0, 2.0, -0.5, 3.0};
        const std::vector<double> vals = {0.25, 1.75};
        const std::string text = write_points_csv(2, pts, vals, "f");
        CHECK(text.rfind("x_1,x_2,f\n", 0) == 0);
        const auto table = read_points_csv(text);
        CHECK(table.dim == 2);
        REQUIRE(table.extra.size() == 2);
        CHECK(table.points[2] == -0.5);
        CHECK(table.extra[1] == 1.75);
    }
    SUBCASE("headerless numeric rows are coordinates only") {
        const auto table = read_points_csv("1.0,2.0\n3.0,4.0\n");
        CHECK(table.dim == 2);
        CHECK(table.extra.empty());
        CHECK(table.points.size() == 4);
    }
    SUBCASE("ragged rows are rejected with the line number") {
        CHECK_THROWS_WITH_AS(read_points_csv("x_1,x_2\n1.0\n"), doctest::Contains("line 2"),
                             std::runtime_error);
    }
    SUBCASE("non-numeric cells are rejected") {
        CHECK_THROWS_WITH_AS(read_points_csv("x_1\n1.0\nfoo\n"), doctest::Contains("line 3"),
                             std::runtime_error);
    }
}
