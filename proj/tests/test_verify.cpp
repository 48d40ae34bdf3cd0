#include "grk/errors.hpp"
#include "grk/verify.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace grk;

TEST_CASE("suite names") {
    const auto& names = verify_suite_names();
    CHECK(names.size() == 10);
    CHECK_THROWS_AS(run_verify_suite("no-such-suite"), InputError);
}

TEST_CASE("fast suites pass") {
    for (const char* name : {"arithmetic", "euler", "section22", "tau25", "oracle", "krullschmidt"}) {
        CAPTURE(name);
        const auto r = run_verify_suite(name);
        CHECK(r.pass);
        CHECK(r.failures == 0);
        CHECK(r.cases > 0);
        const auto j = nlohmann::json::parse(verify_result_json(r));
        CHECK(j["suite"] == name);
        CHECK(j["pass"] == true);
    }
}

TEST_CASE("gap scan suite with a supplied catalog") {
    VerifyParams p;
    p.q = 2;
    p.m = 1;
    p.max_length = 5;
    p.families_length = 7;
    const auto r = run_verify_suite("gapscan", p);
    CHECK(r.pass);
    CHECK_FALSE(r.payload.empty());
}
