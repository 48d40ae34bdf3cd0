#include "grk/errors.hpp"
#include "grk/kronecker.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <set>

using namespace grk;
using namespace grk::testgen;

namespace {

struct Shape {
    unsigned n, q;
    std::size_t d1, d2;
};

const std::vector<Shape> kSmall{{3, 2, 1, 1}, {3, 2, 1, 2}, {3, 2, 2, 1}, {3, 2, 2, 2}, {3, 3, 1, 2},
                                {3, 3, 2, 1}, {4, 2, 2, 2}, {2, 3, 2, 2}, {3, 2, 1, 3}, {3, 5, 1, 1}};

KroneckerModule random_small(Rng& rng, const Shape& s) { return random_module(rng, s.n, s.q, s.d1, s.d2); }

DimVector total_dim(const std::vector<KroneckerModule>& parts) {
    DimVector d;
    for (const auto& p : parts)
        d = d + p.dim();
    return d;
}

} // namespace

TEST_CASE("construction validates shapes and modulus") {
    CHECK_THROWS_AS(KroneckerModule(3, 2, 1, 1, {}), InputError);
    CHECK_THROWS_AS(KroneckerModule(1, 4, 1, 1, {FqMatrix(4, 1, 1)}), InputError);
    CHECK_THROWS_AS(KroneckerModule(1, 2, 2, 1, {FqMatrix(2, 2, 1)}), InputError);
    CHECK_NOTHROW(KroneckerModule(1, 2, 2, 1, {FqMatrix(2, 1, 2)}));
}

TEST_CASE("Euler form equals dim Hom minus dim Ext") {
    Rng rng(41);
    for (int t = 0; t < 200; ++t) {
        const auto& s = kSmall[t % kSmall.size()];
        const auto x = random_small(rng, s);
        const auto y = random_module(rng, s.n, s.q, uniform(rng, 0, 2), uniform(rng, 0, 2));
        const auto he = hom_ext(x, y);
        CHECK(std::int64_t(he.hom_basis.size()) - std::int64_t(he.ext_dim) == euler_form(x.dim(), y.dim(), s.n));
        for (const auto& f : he.hom_basis)
            CHECK(is_module_map(x, y, f));
    }
}

TEST_CASE("Auslander-Reiten formula ext(X,Y) = hom(Y, tau X) for indecomposable non-projective X") {
    Rng rng(43);
    int checked = 0;
    for (int t = 0; t < 120; ++t) {
        const auto& s = kSmall[t % kSmall.size()];
        const auto x = random_small(rng, s);
        if (!is_indecomposable(x) || classify_position(x.dim(), s.n) == Position::Preprojective)
            continue;
        const auto tx = tau_module(x);
        const auto y = random_module(rng, s.n, s.q, uniform(rng, 0, 2), uniform(rng, 0, 2));
        CHECK(ext_dim(x, y) == hom_dim(y, tx));
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("tau on dimension vectors and round trip") {
    Rng rng(47);
    for (int t = 0; t < 80; ++t) {
        const auto& s = kSmall[t % kSmall.size()];
        const auto x = random_small(rng, s);
        if (!is_indecomposable(x) || classify_position(x.dim(), s.n) == Position::Preprojective)
            continue;
        const auto tx = tau_module(x);
        CHECK(tx.dim() == tau_dim(x.dim(), s.n));
        CHECK(is_isomorphic(tau_inverse_module(tx), x));
    }
    CHECK(tau_module(simple_module(3, 2, 1)).dim() == DimVector{8, 3});
    CHECK(tau_module(q_module(1, 3, 2)).dim() == DimVector{21, 8});
    CHECK(tau_module(p_module(3, 3, 2)).dim() == DimVector{0, 1});
    CHECK_THROWS_AS(tau_module(p_module(2, 3, 2)), PreconditionError);
    CHECK_THROWS_AS(tau_inverse_module(simple_module(3, 2, 1)), PreconditionError);
}

TEST_CASE("Krull-Schmidt: decomposing sums recovers the summands") {
    Rng rng(53);
    const std::vector<std::pair<std::size_t, std::size_t>> dims{{1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    for (int t = 0; t < 60; ++t) {
        const unsigned q = t % 2 ? 3 : 2;
        const auto [a1, a2] = dims[uniform(rng, 0, unsigned(dims.size() - 1))];
        const auto [b1, b2] = dims[uniform(rng, 0, unsigned(dims.size() - 1))];
        const auto a = random_indecomposable(rng, 3, q, a1, a2);
        const auto b = random_indecomposable(rng, 3, q, b1, b2);
        const auto m = random_basis_change(rng, direct_sum(a, b));
        const auto parts = decompose(m);
        REQUIRE(parts.size() == 2);
        CHECK(total_dim(parts) == m.dim());
        const bool straight = is_isomorphic(parts[0], a) && is_isomorphic(parts[1], b);
        const bool swapped = is_isomorphic(parts[0], b) && is_isomorphic(parts[1], a);
        CHECK((straight || swapped));
        CHECK(is_isomorphic(direct_sum(parts[0], parts[1]), m));
    }
}

TEST_CASE("semisimple modules split into simples") {
    for (auto [d1, d2] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {2, 0}, {2, 2}, {3, 1}, {0, 3}}) {
        const auto m = KroneckerModule::zero_maps(3, 2, d1, d2);
        const auto parts = decompose(m);
        CHECK(parts.size() == d1 + d2);
        for (const auto& p : parts)
            CHECK(p.length() == 1);
    }
}

TEST_CASE("indecomposability: fast path agrees with the exhaustive idempotent search") {
    Rng rng(59);
    int indec = 0, dec = 0;
    for (int t = 0; t < 300; ++t) {
        const auto& s = kSmall[t % kSmall.size()];
        const auto m = random_small(rng, s);
        const bool fast = is_indecomposable(m);
        CHECK(fast == !has_nontrivial_idempotent_exhaustive(m));
        (fast ? indec : dec)++;
    }
    CHECK(indec > 0);
    CHECK(dec > 0);
    CHECK_THROWS_AS(is_indecomposable(KroneckerModule::zero_maps(3, 2, 0, 0)), PreconditionError);
}

TEST_CASE("submodule lattice is closed under sum and intersection") {
    Rng rng(61);
    for (int t = 0; t < 30; ++t) {
        const auto& s = kSmall[t % kSmall.size()];
        const auto m = random_small(rng, s);
        const auto subs = enumerate_submodules(m);
        std::set<SubmodulePair> all(subs.begin(), subs.end());
        CHECK(all.size() == subs.size());
        for (const auto& a : subs) {
            CHECK(is_submodule(m, a));
            const auto b = subs[uniform(rng, 0, unsigned(subs.size() - 1))];
            CHECK(all.count({subspace_sum(a.u1, b.u1), subspace_sum(a.u2, b.u2)}) == 1);
            CHECK(all.count({subspace_intersection(a.u1, b.u1), subspace_intersection(a.u2, b.u2)}) == 1);
            CHECK(restrict_to(m, a).dim() + quotient(m, a).dim() == m.dim());
        }
    }
    // Semisimple (2,0): one submodule per subspace of F_2^2.
    CHECK(enumerate_submodules(KroneckerModule::zero_maps(3, 2, 2, 0)).size() == 5);
    // P_2 over F_2: 0, the 7 lines, 7 planes and the whole of vertex 2, plus P_2.
    CHECK(enumerate_submodules(p_module(2, 3, 2)).size() == 17);
}

TEST_CASE("isomorphism is invariant under base change") {
    Rng rng(67);
    for (int t = 0; t < 100; ++t) {
        const auto& s = kSmall[t % kSmall.size()];
        const auto m = random_small(rng, s);
        CHECK(is_isomorphic(m, random_basis_change(rng, m)));
    }
    CHECK_FALSE(is_isomorphic(embed2k(regular2k(2, 0, 2), 3), embed2k(regular2k(2, 1, 2), 3)));
    CHECK_FALSE(is_isomorphic(embed2k(regular2k(2, 0, 2), 3), embed2k(regular2k_inf(2, 2), 3)));
}

TEST_CASE("(1,1) submodules") {
    CHECK(has_11_submodule(embed2k(regular2k(3, 1, 2), 3)));
    CHECK(has_11_submodule(embed2k(regular2k_inf(2, 3), 3)));
    CHECK_FALSE(has_11_submodule(p_module(2, 3, 2)));
    CHECK_FALSE(has_11_submodule(KroneckerModule::zero_maps(3, 2, 1, 1)));
    CHECK(has_11_submodule(q_module(1, 3, 2)));
}

TEST_CASE("named families") {
    CHECK(construct_family("p", {"2"}, 3, 2).dim() == DimVector{1, 3});
    CHECK(construct_family("q", {"1"}, 3, 2).dim() == DimVector{3, 1});
    CHECK(construct_family("simple", {"1"}, 3, 2).dim() == DimVector{1, 0});
    CHECK(construct_family("regular2k", {"2", "0"}, 3, 2) == embed2k(regular2k(2, 0, 2), 3));
    CHECK(construct_family("regular2k", {"2", "inf"}, 3, 2) == embed2k(regular2k_inf(2, 2), 3));
    CHECK(construct_family("preproj2k", {"2"}, 4, 3).dim() == DimVector{2, 3});
    CHECK(construct_family("preinj2k", {"2"}, 4, 3).n() == 4);
    CHECK_THROWS_AS(construct_family("nope", {}, 3, 2), InputError);
    CHECK_THROWS_AS(construct_family("p", {"x"}, 3, 2), InputError);
    CHECK_THROWS_AS(construct_family("p", {}, 3, 2), InputError);
    CHECK_THROWS_AS(construct_family("p", {"2"}, 3, 4), InputError);
    for (unsigned n = 2; n <= 5; ++n)
        for (unsigned r = 1; r <= 4; ++r) {
            const auto p = p_module(r, n, 2);
            CHECK(p.dim() == preprojective_dims(n, r)[r - 1]);
            if (p.length() <= 12)
                CHECK(is_indecomposable(p));
        }
}
