#include "grk/errors.hpp"
#include "grk/module_io.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <filesystem>

using namespace grk;
using namespace grk::testgen;

TEST_CASE("fixed document") {
    const auto m = module_from_json(R"({"n":3,"q":2,"dim":[1,1],"maps":[[[1]],[[0]],[[0]]]})");
    CHECK(m.n() == 3);
    CHECK(m.dim() == DimVector{1, 1});
    CHECK(m.map(0)(0, 0) == 1);
    CHECK(module_to_json(m) == R"({"n":3,"q":2,"dim":[1,1],"maps":[[[1]],[[0]],[[0]]]})");
}

TEST_CASE("round trip through text and files") {
    Rng rng(71);
    const auto dir = std::filesystem::temp_directory_path() / "grk_io_test";
    std::filesystem::create_directories(dir);
    for (int t = 0; t < 100; ++t) {
        const unsigned q = std::vector<unsigned>{2, 3, 5, 7}[t % 4];
        const auto m = random_module(rng, uniform(rng, 1, 4), q, uniform(rng, 0, 3), uniform(rng, 0, 3));
        CHECK(module_from_json(module_to_json(m)) == m);
        const auto path = dir / "m.json";
        write_module_file(path, m);
        CHECK(read_module_file(path) == m);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(module_from_json("not json"), InputError);
    CHECK_THROWS_AS(module_from_json(R"({"n":3,"q":2,"dim":[1,1]})"), InputError);
    CHECK_THROWS_AS(module_from_json(R"({"n":2,"q":4,"dim":[1,1],"maps":[[[1]],[[0]]]})"), InputError);
    CHECK_THROWS_AS(module_from_json(R"({"n":2,"q":2,"dim":[1,1],"maps":[[[1]]]})"), InputError);
    CHECK_THROWS_AS(module_from_json(R"({"n":1,"q":2,"dim":[2,1],"maps":[[[1]]]})"), InputError);
    CHECK_THROWS_AS(module_from_json(R"({"n":1,"q":3,"dim":[1,1],"maps":[[[3]]]})"), InputError);
    CHECK_THROWS_AS(read_module_file("/nonexistent/m.json"), InputError);
}
