#include "grk/errors.hpp"
#include "grk/fq_linalg.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <set>

using namespace grk;
using namespace grk::testgen;

TEST_CASE("field arithmetic") {
    for (unsigned q : {2u, 3u, 5u, 7u, 251u})
        for (unsigned a = 1; a < q; ++a)
            CHECK(mul_mod(Fq(a), inv_mod(Fq(a), q), q) == 1);
    CHECK(is_prime(251));
    CHECK_FALSE(is_prime(4));
    CHECK_THROWS_AS(require_prime(9), InputError);
    CHECK_THROWS_AS(require_prime(257), InputError);
    CHECK(FqMatrix(5, 1, 2, std::vector<long long>{-1, 7}) == FqMatrix(5, 1, 2, std::vector<long long>{4, 2}));
}

TEST_CASE("rref of a fixed matrix over F_3") {
    // Third row is the sum of the first two.
    const auto a = FqMatrix::from_rows(3, {{0, 2, 1, 1}, {1, 1, 0, 2}, {1, 0, 1, 0}}, 4);
    const auto r = rref_with_pivots(a);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.matrix == FqMatrix::from_rows(3, {{1, 0, 1, 0}, {0, 1, 2, 2}, {0, 0, 0, 0}}, 4));
    CHECK(rank(a) == 2);
}

TEST_CASE("random matrices: rank, inverse, kernel, image, solve") {
    Rng rng(17);
    for (int t = 0; t < 400; ++t) {
        const unsigned q = std::vector<unsigned>{2, 3, 5}[t % 3];
        const std::size_t r = uniform(rng, 0, 5), c = uniform(rng, 0, 5);
        const auto a = random_matrix(rng, q, r, c);
        const auto k = kernel_basis(a);
        const auto im = image_basis(a);
        CHECK(rank(a) == im.dim());
        CHECK(k.dim() + im.dim() == c);
        for (std::size_t i = 0; i < k.dim(); ++i) {
            const auto v = k.basis().row(i);
            CHECK(grk::apply(a, v) == std::vector<Fq>(r, 0));
        }
        CHECK(rank(a.transpose()) == rank(a));
        std::vector<Fq> x(c);
        for (auto& e : x)
            e = Fq(uniform(rng, 0, q - 1));
        const auto b = grk::apply(a, x);
        const auto s = solve(a, b);
        REQUIRE(s.has_value());
        CHECK(grk::apply(a, *s) == b);

        const auto g = random_invertible(rng, q, uniform(rng, 1, 5));
        const auto gi = inverse(g);
        REQUIRE(gi.has_value());
        CHECK(g * *gi == FqMatrix::identity(q, g.rows()));
    }
}

TEST_CASE("Galois numbers") {
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(3, 1, 3) == 13);
    CHECK(galois_number(3, 2) == 16);
    CHECK(galois_number(4, 2) == 67);
    CHECK(galois_number(2, 5) == 8);
    CHECK(galois_number(0, 7) == 1);
}

TEST_CASE("subspace enumeration is complete and duplicate-free") {
    for (auto [d, q] : std::vector<std::pair<std::size_t, unsigned>>{{1, 2}, {3, 2}, {4, 2}, {5, 2}, {3, 3}, {2, 5}, {4, 3}}) {
        const auto all = enumerate_subspaces(d, q, std::nullopt, 1u << 16);
        CHECK(all.size() == galois_number(unsigned(d), q));
        std::set<Subspace> seen(all.begin(), all.end());
        CHECK(seen.size() == all.size());
        for (std::size_t k = 0; k <= d; ++k)
            CHECK(enumerate_subspaces(d, q, k, 1u << 16).size() == gaussian_binomial(unsigned(d), unsigned(k), q));
        for (std::size_t i = 1; i < all.size(); ++i)
            CHECK(all[i - 1].dim() <= all[i].dim());
    }
    CHECK_THROWS_AS(enumerate_subspaces(11, 2), CapExceeded);
}

TEST_CASE("subspace operations") {
    Rng rng(99);
    for (int t = 0; t < 300; ++t) {
        const unsigned q = t % 2 ? 3 : 2;
        const std::size_t d = uniform(rng, 1, 5);
        const auto u = Subspace::span(random_matrix(rng, q, uniform(rng, 0, 3), d));
        const auto v = Subspace::span(random_matrix(rng, q, uniform(rng, 0, 3), d));
        const auto s = subspace_sum(u, v);
        const auto i = subspace_intersection(u, v);
        CHECK(s.dim() + i.dim() == u.dim() + v.dim());
        CHECK(contains(s, u));
        CHECK(contains(s, v));
        CHECK(contains(u, i));
        CHECK(contains(v, i));
        // Canonical form does not depend on the generators.
        const auto g = random_invertible(rng, q, u.dim());
        CHECK(Subspace::span(g * u.basis()) == u);
        for (std::size_t r = 0; r < u.dim(); ++r)
            CHECK(u.contains_vector(u.basis().row(r)));
        CHECK(subspaces_of(s, i.dim(), 1u << 16).size() == gaussian_binomial(unsigned(s.dim()), unsigned(i.dim()), q));
    }
}
