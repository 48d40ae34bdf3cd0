#include "grk/errors.hpp"
#include "grk/gr_order.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace grk;
using namespace grk::testgen;

namespace {

// Minimum of the symmetric difference decides the order.
int symdiff_oracle(const GRMeasure& a, const GRMeasure& b) {
    std::set<std::uint32_t> sa(a.elements().begin(), a.elements().end());
    std::set<std::uint32_t> sb(b.elements().begin(), b.elements().end());
    std::vector<std::uint32_t> d;
    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(d));
    if (d.empty())
        return 0;
    return sb.count(d.front()) ? -1 : 1;
}

int sign(std::strong_ordering o) { return o < 0 ? -1 : o > 0 ? 1 : 0; }

} // namespace

TEST_CASE("order on hand-picked pairs") {
    CHECK(GRMeasure{} < GRMeasure{1});
    CHECK(GRMeasure{1} < GRMeasure{1, 4});
    CHECK(GRMeasure{1, 4} < GRMeasure{1, 3});
    CHECK(GRMeasure{1, 3, 5} < GRMeasure{1, 2});
    CHECK(GRMeasure{1, 2, 4} < GRMeasure{1, 2, 4, 5});
    CHECK(GRMeasure{1, 2, 5} < GRMeasure{1, 2, 4});
    CHECK(GRMeasure{2} < GRMeasure{1});
    CHECK(compare(GRMeasure{1, 3}, GRMeasure{1, 3}) == 0);
}

TEST_CASE("order agrees with the symmetric-difference rule on random triples") {
    Rng rng(2024);
    for (int t = 0; t < 10000; ++t) {
        const auto a = random_measure(rng, 9);
        const auto b = random_measure(rng, 9);
        const auto c = random_measure(rng, 9);
        const int ab = sign(compare(a, b));
        REQUIRE(ab == symdiff_oracle(a, b));
        CHECK(sign(compare(b, a)) == -ab);
        CHECK((ab == 0) == (a == b));
        if (a < b && b < c)
            CHECK(a < c);
        if (a <= b && b <= a)
            CHECK(a == b);
    }
}

TEST_CASE("a set is smaller than every set it starts") {
    Rng rng(7);
    for (int t = 0; t < 2000; ++t) {
        auto a = random_measure(rng, 8);
        const auto top = a.empty() ? 0u : a.max();
        const auto b = extend(a, top + uniform(rng, 1, 5));
        CHECK(a < b);
        CHECK(ll_relation(a, b));
        CHECK(starts_with(b, a));
        CHECK(starts_with(a, a));
        CHECK_FALSE(ll_relation(a, a));
    }
}

TEST_CASE("mu families") {
    CHECK(mu_lower(1) == GRMeasure{1, 2});
    CHECK(mu_lower(3) == GRMeasure{1, 2, 4, 6});
    CHECK(mu_upper(2) == GRMeasure{1, 2, 4, 5});
    for (unsigned m = 1; m < 30; ++m) {
        CHECK(mu_lower(m) < mu_upper(m + 1));
        CHECK(mu_upper(m + 1) < mu_upper(m));
        CHECK(mu_lower(m + 1) < mu_upper(m + 1));
        CHECK(mu_lower(m) < mu_lower(m + 1));
        CHECK(starts_with(mu_upper(m), mu_lower(m)));
    }
}

TEST_CASE("find_between picks the smallest element strictly inside") {
    const std::vector<GRMeasure> cat{{1}, {1, 4}, {1, 3}, {1, 2}, {1, 3, 5}};
    CHECK(find_between(GRMeasure{1}, GRMeasure{1, 2}, cat) == GRMeasure{1, 4});
    CHECK(find_between(GRMeasure{1, 3}, GRMeasure{1, 2}, cat) == GRMeasure{1, 3, 5});
    CHECK_FALSE(find_between(GRMeasure{1, 3, 5}, GRMeasure{1, 2}, cat).has_value());
}

TEST_CASE("parse and format") {
    CHECK(parse_measure("{1,2,4}") == GRMeasure{1, 2, 4});
    CHECK(parse_measure(" { 1 , 3 } ") == GRMeasure{1, 3});
    CHECK(parse_measure("{}").empty());
    CHECK(format_measure(GRMeasure{1, 2, 4, 5}) == "{1,2,4,5}");
    CHECK(format_measure(GRMeasure{}) == "{}");
    CHECK_THROWS_AS(parse_measure("{2,1}"), InputError);
    CHECK_THROWS_AS(parse_measure("{1,1}"), InputError);
    CHECK_THROWS_AS(parse_measure("{0}"), InputError);
    CHECK_THROWS_AS(parse_measure("1,2"), InputError);
    CHECK_THROWS_AS(parse_measure("{1,x}"), InputError);
    CHECK_THROWS_AS(extend(GRMeasure{1, 4}, 3), std::exception);
    Rng rng(3);
    for (int t = 0; t < 500; ++t) {
        const auto m = random_measure(rng, 12);
        CHECK(parse_measure(format_measure(m)) == m);
    }
}
