#pragma once

// Random modules and measures driven by an explicit std::mt19937_64, so
// every run replays from its seed.

#include "grk/errors.hpp"
#include "grk/gr_order.hpp"
#include "grk/kronecker.hpp"

#include <random>
#include <vector>

namespace grk {

using Rng = std::mt19937_64;

inline unsigned uniform(Rng& rng, unsigned lo, unsigned hi) {
    return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

inline FqMatrix random_matrix(Rng& rng, unsigned q, std::size_t rows, std::size_t cols) {
    FqMatrix a(q, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            a(r, c) = Fq(uniform(rng, 0, q - 1));
    return a;
}

inline FqMatrix random_invertible(Rng& rng, unsigned q, std::size_t d) {
    for (;;) {
        FqMatrix g = random_matrix(rng, q, d, d);
        if (is_invertible(g))
            return g;
    }
}

inline KroneckerModule random_module(Rng& rng, unsigned n, unsigned q, std::size_t d1, std::size_t d2) {
    std::vector<FqMatrix> maps;
    for (unsigned i = 0; i < n; ++i)
        maps.push_back(random_matrix(rng, q, d2, d1));
    return KroneckerModule(n, q, d1, d2, std::move(maps));
}

// Retries random tuples until one is indecomposable.
inline KroneckerModule random_indecomposable(Rng& rng, unsigned n, unsigned q, std::size_t d1, std::size_t d2,
                                             int tries = 2000) {
    for (int t = 0; t < tries; ++t) {
        auto m = random_module(rng, n, q, d1, d2);
        if (is_indecomposable(m))
            return m;
    }
    throw Error("random_indecomposable: none found for dim (" + std::to_string(d1) + "," + std::to_string(d2) + ")");
}

inline KroneckerModule random_basis_change(Rng& rng, const KroneckerModule& m) {
    return conjugate(m, random_invertible(rng, m.q(), m.d1()), random_invertible(rng, m.q(), m.d2()));
}

// Subsets of {1..universe}, each element kept with probability 1/3.
inline GRMeasure random_measure(Rng& rng, unsigned universe = 12) {
    std::vector<GRMeasure::value_type> e;
    for (unsigned x = 1; x <= universe; ++x)
        if (uniform(rng, 0, 2) == 0)
            e.push_back(x);
    return GRMeasure(std::move(e));
}

} // namespace grk
