#include "grk/errors.hpp"
#include "grk/gr_engine.hpp"

#include "support/generators.hpp"

#include <doctest.h>

using namespace grk;
using namespace grk::testgen;

namespace {

KroneckerModule one_one(unsigned n, unsigned q, std::vector<long long> arrows) {
    std::vector<FqMatrix> maps;
    for (auto a : arrows)
        maps.push_back(FqMatrix(q, 1, 1, std::vector<long long>{a}));
    return KroneckerModule(n, q, 1, 1, std::move(maps));
}

std::vector<std::size_t> chain_lengths(const std::vector<SubmodulePair>& chain) {
    std::vector<std::size_t> out;
    for (const auto& s : chain)
        out.push_back(s.length());
    return out;
}

} // namespace

TEST_CASE("measures of small modules") {
    CHECK(gr_measure(KroneckerModule::zero_maps(3, 2, 0, 0)).empty());
    CHECK(gr_measure(simple_module(3, 2, 1)) == GRMeasure{1});
    CHECK(gr_measure(simple_module(3, 2, 2)) == GRMeasure{1});
    CHECK(gr_measure(one_one(3, 2, {1, 0, 1})) == GRMeasure{1, 2});
    CHECK(gr_measure(one_one(3, 5, {0, 4, 0})) == GRMeasure{1, 2});
    // (1,1) with zero arrows is S1 + S2.
    CHECK(gr_measure(one_one(3, 2, {0, 0, 0})) == GRMeasure{1});
    CHECK(gr_measure(p_module(2, 3, 2)) == GRMeasure{1, 4});
    CHECK(gr_measure(q_module(1, 3, 2)) == GRMeasure{1, 2, 3, 4});
}

TEST_CASE("embedded 2-Kronecker families") {
    CHECK(gr_measure(embed2k(preinj2k(2, 2), 3)) == GRMeasure{1, 2, 4, 5});
    CHECK(gr_measure(embed2k(regular2k(2, 0, 2), 3)) == GRMeasure{1, 2, 4});
    CHECK(gr_measure(embed2k(preproj2k(2, 2), 3)) == GRMeasure{1, 3, 5});
    CHECK(gr_measure(embed2k(regular2k_inf(3, 2), 3)) == mu_lower(3));
    CHECK(gr_measure(embed2k(preinj2k(3, 3), 3)) == mu_upper(3));
}

TEST_CASE("an indecomposable (2,1) module has measure {1,2,3}") {
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        auto m = random_indecomposable(rng, 3, 2, 2, 1);
        CHECK(gr_measure(m) == GRMeasure{1, 2, 3});
    }
}

TEST_CASE("decomposable input: maximum over summands") {
    Rng rng(5);
    const auto a = embed2k(preinj2k(2, 2), 3);
    const auto b = p_module(2, 3, 2);
    const auto sum = random_basis_change(rng, direct_sum(a, b));
    CHECK(gr_measure(sum) == std::max(gr_measure(a), gr_measure(b)));
}

TEST_CASE("oracle agrees on random small modules") {
    Rng rng(2024);
    int checked = 0;
    for (int t = 0; t < 150; ++t) {
        const unsigned d1 = uniform(rng, 0, 3);
        const unsigned d2 = uniform(rng, d1 == 0 ? 1 : 0, 4 - std::min(d1, 3u));
        const auto m = random_module(rng, 3, 2, d1, d2);
        if (m.length() > 5)
            continue;
        INFO("module dims (" << d1 << "," << d2 << ") trial " << t);
        CHECK(gr_measure(m) == gr_measure_oracle(m));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("oracle rejects long input") {
    CHECK_THROWS_AS(gr_measure_oracle(p_module(3, 3, 2)), CapExceeded);
}

TEST_CASE("GR submodules and witness chains") {
    const auto reg = embed2k(regular2k(2, 0, 2), 3);
    const auto subs = gr_submodules(reg);
    REQUIRE(!subs.empty());
    for (const auto& x : subs) {
        CHECK(x.dim() == DimVector{1, 1});
        CHECK(is_gr_inclusion(reg, x));
    }

    const auto p2 = p_module(2, 3, 2);
    const auto p2_subs = gr_submodules(p2);
    CHECK(p2_subs.size() == 7); // lines of F_2^3
    CHECK(is_gr_inclusion(p2, p2_subs.front()));
    CHECK(chain_lengths(witness_chain(p2)) == std::vector<std::size_t>{1, 4});

    const auto inj = embed2k(preinj2k(2, 2), 3);
    const auto chain = witness_chain(inj);
    CHECK(chain_lengths(chain) == std::vector<std::size_t>{1, 2, 4, 5});
    for (std::size_t i = 0; i < chain.size(); ++i) {
        CHECK(is_submodule(inj, chain[i]));
        CHECK(is_indecomposable(restrict_to(inj, chain[i])));
        if (i > 0) {
            CHECK(contains(chain[i].u1, chain[i - 1].u1));
            CHECK(contains(chain[i].u2, chain[i - 1].u2));
        }
    }

    CHECK_THROWS_AS(gr_submodules(simple_module(3, 2, 1)), PreconditionError);
    CHECK_THROWS_AS(gr_submodules(direct_sum(p2, p2)), PreconditionError);
}

TEST_CASE("measure cache returns the same value for isomorphic inputs") {
    Rng rng(77);
    MeasureCache cache;
    const auto m = embed2k(preinj2k(2, 2), 3);
    const auto first = cache.measure(m);
    for (int t = 0; t < 5; ++t)
        CHECK(cache.measure(random_basis_change(rng, m)) == first);
    CHECK(cache.size() == 1);
    CHECK(cache.hits() == 5);
    CHECK(cache.measure(p_module(2, 3, 2)) == GRMeasure{1, 4});
    CHECK(cache.size() == 2);
}

TEST_CASE("signature is invariant under basis change") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto m = random_module(rng, 3, 3, uniform(rng, 1, 3), uniform(rng, 1, 3));
        CHECK(signature(m) == signature(random_basis_change(rng, m)));
    }
}

TEST_CASE("monotone along submodules") {
    Rng rng(8);
    for (int t = 0; t < 10; ++t) {
        const auto m = random_module(rng, 3, 2, 2, 3);
        const auto mu = gr_measure(m);
        for (const auto& s : enumerate_submodules(m))
            CHECK(gr_measure(restrict_to(m, s)) <= mu);
    }
}
