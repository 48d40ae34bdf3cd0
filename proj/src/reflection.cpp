// tau and tau^{-1} as composites of BGP reflection functors.
//
// Arrows point from vertex 1 to vertex 2, so vertex 2 is a sink. tau is the
// sink reflection at 2 followed by the sink reflection at 1 (kernels, with
// the coordinate projections as new arrows). tau^{-1} is the source
// reflection at 1 followed by the source reflection at 2 (cokernels, with
// the coordinate inclusions as new arrows).

#include "grk/kronecker.hpp"

#include "grk/errors.hpp"

namespace grk {

namespace {

// [A_1 | A_2 | ... | A_n]
FqMatrix side_by_side(const std::vector<FqMatrix>& maps, unsigned q, std::size_t rows) {
    FqMatrix out(q, rows, 0);
    for (const auto& a : maps)
        out = hstack(out, a);
    return out;
}

// [A_1; A_2; ...; A_n]
FqMatrix stacked(const std::vector<FqMatrix>& maps, unsigned q, std::size_t cols) {
    FqMatrix out(q, 0, cols);
    for (const auto& a : maps)
        out = vstack(out, a);
    return out;
}

// Kernel K of [A_1|...|A_n] : (F^s)^n -> F^t and the projections K -> F^s.
std::vector<FqMatrix> kernel_projections(const std::vector<FqMatrix>& maps, unsigned q, std::size_t s,
                                         std::size_t t, std::size_t& kdim) {
    const Subspace k = kernel_basis(side_by_side(maps, q, t));
    kdim = k.dim();
    std::vector<FqMatrix> proj;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        FqMatrix p(q, s, kdim);
        for (std::size_t j = 0; j < kdim; ++j)
            for (std::size_t r = 0; r < s; ++r)
                p(r, j) = k.basis()(j, i * s + r);
        proj.push_back(std::move(p));
    }
    return proj;
}

// Cokernel C of [A_1;...;A_n] : F^s -> (F^t)^n and the maps F^t -> C
// induced by the i-th coordinate inclusion.
std::vector<FqMatrix> cokernel_inclusions(const std::vector<FqMatrix>& maps, unsigned q, std::size_t s,
                                          std::size_t t, std::size_t& cdim) {
    const std::size_t big = maps.size() * t;
    const Subspace im = image_basis(stacked(maps, q, s));
    cdim = big - im.dim();
    std::vector<FqMatrix> inc;
    std::vector<Fq> e(big, 0);
    for (std::size_t i = 0; i < maps.size(); ++i) {
        FqMatrix g(q, cdim, t);
        for (std::size_t j = 0; j < t; ++j) {
            e[i * t + j] = 1;
            const auto c = im.quotient_coordinates(e);
            e[i * t + j] = 0;
            for (std::size_t r = 0; r < cdim; ++r)
                g(r, j) = c[r];
        }
        inc.push_back(std::move(g));
    }
    return inc;
}

} // namespace

KroneckerModule tau_module(const KroneckerModule& m, const Caps& caps) {
    if (m.length() == 0 || !is_indecomposable(m, caps))
        throw PreconditionError("tau_module needs an indecomposable module");
    const unsigned q = m.q();
    // Sink reflection at vertex 2: K2 = ker(V1^n -> V2), arrows K2 -> V1.
    std::size_t k2 = 0;
    const auto back = kernel_projections(m.maps(), q, m.d1(), m.d2(), k2);
    // Sink reflection at vertex 1: K1 = ker(K2^n -> V1), arrows K1 -> K2.
    std::size_t k1 = 0;
    auto forth = kernel_projections(back, q, k2, m.d1(), k1);
    if (k1 + k2 == 0)
        throw PreconditionError("tau_module: input is projective");
    return KroneckerModule(m.n(), q, k1, k2, std::move(forth));
}

KroneckerModule tau_inverse_module(const KroneckerModule& m, const Caps& caps) {
    if (m.length() == 0 || !is_indecomposable(m, caps))
        throw PreconditionError("tau_inverse_module needs an indecomposable module");
    const unsigned q = m.q();
    // Source reflection at vertex 1: C1 = coker(V1 -> V2^n), arrows V2 -> C1.
    std::size_t c1 = 0;
    const auto back = cokernel_inclusions(m.maps(), q, m.d1(), m.d2(), c1);
    // Source reflection at vertex 2: C2 = coker(V2 -> C1^n), arrows C1 -> C2.
    std::size_t c2 = 0;
    auto forth = cokernel_inclusions(back, q, m.d2(), c1, c2);
    if (c1 + c2 == 0)
        throw PreconditionError("tau_inverse_module: input is injective");
    return KroneckerModule(m.n(), q, c1, c2, std::move(forth));
}

} // namespace grk
