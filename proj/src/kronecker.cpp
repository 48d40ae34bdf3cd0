#include "grk/kronecker.hpp"

#include "grk/errors.hpp"

#include <algorithm>
#include <string>

namespace grk {

void validate(unsigned n, unsigned q, std::size_t d1, std::size_t d2, const std::vector<FqMatrix>& maps) {
    if (n < 1)
        throw InputError("a Kronecker module needs at least one arrow");
    require_prime(q);
    if (maps.size() != n)
        throw InputError("expected " + std::to_string(n) + " maps, got " + std::to_string(maps.size()));
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& a = maps[i];
        if (a.q() != q)
            throw InputError("map " + std::to_string(i + 1) + " has the wrong modulus");
        if (a.rows() != d2 || a.cols() != d1)
            throw InputError("map " + std::to_string(i + 1) + " must be " + std::to_string(d2) + "x" +
                             std::to_string(d1));
        for (Fq x : a.data())
            if (x >= q)
                throw InputError("map entry out of range");
    }
}

void validate(const KroneckerModule& m) { validate(m.n(), m.q(), m.d1(), m.d2(), m.maps()); }

KroneckerModule::KroneckerModule(unsigned n, unsigned q, std::size_t d1, std::size_t d2,
                                 std::vector<FqMatrix> maps)
    : n_(n), q_(q), d1_(d1), d2_(d2), maps_(std::move(maps)) {
    validate(n_, q_, d1_, d2_, maps_);
}

KroneckerModule KroneckerModule::zero_maps(unsigned n, unsigned q, std::size_t d1, std::size_t d2) {
    return KroneckerModule(n, q, d1, d2, std::vector<FqMatrix>(n, FqMatrix(q, d2, d1)));
}

KroneckerModule direct_sum(const KroneckerModule& a, const KroneckerModule& b) {
    if (a.n() != b.n() || a.q() != b.q())
        throw InputError("direct_sum: parameter mismatch");
    std::vector<FqMatrix> maps;
    maps.reserve(a.n());
    for (unsigned i = 0; i < a.n(); ++i)
        maps.push_back(block_diag(a.map(i), b.map(i)));
    return KroneckerModule(a.n(), a.q(), a.d1() + b.d1(), a.d2() + b.d2(), std::move(maps));
}

KroneckerModule conjugate(const KroneckerModule& m, const FqMatrix& g1, const FqMatrix& g2) {
    auto g1_inv = inverse(g1);
    if (!g1_inv || !is_invertible(g2))
        throw InputError("conjugate: basis change is not invertible");
    std::vector<FqMatrix> maps;
    for (const auto& a : m.maps())
        maps.push_back(g2 * a * *g1_inv);
    return KroneckerModule(m.n(), m.q(), m.d1(), m.d2(), std::move(maps));
}

// ---------------------------------------------------------------- submodules

Subspace forced_floor(const KroneckerModule& m, const Subspace& u1) {
    if (u1.dim() == 0 || m.d2() == 0)
        return Subspace::zero(m.q(), m.d2());
    // Rows of U1 A_i^T are the images of the basis vectors.
    FqMatrix gens(m.q(), 0, m.d2());
    for (const auto& a : m.maps())
        gens = vstack(gens, u1.basis() * a.transpose());
    return Subspace::span(gens);
}

SubmodulePair generated_submodule(const KroneckerModule& m, const Subspace& u1) {
    return {u1, forced_floor(m, u1)};
}

bool is_submodule(const KroneckerModule& m, const SubmodulePair& s) {
    if (s.u1.ambient() != m.d1() || s.u2.ambient() != m.d2())
        return false;
    return contains(s.u2, forced_floor(m, s.u1));
}

namespace {

void check_lattice_caps(const KroneckerModule& m, const Caps& caps) {
    if (m.length() > caps.submodule_length)
        throw CapExceeded("submodule enumeration: length " + std::to_string(m.length()) +
                          " exceeds the cap of " + std::to_string(caps.submodule_length));
}

// All U2 containing W: subspaces of F^d2 / W lifted back.
void for_each_superspace(const Subspace& w, const std::function<bool(const Subspace&)>& visit,
                         const Caps& caps) {
    const auto free = w.non_pivots();
    for_each_subspace(free.size(), w.q(), std::nullopt, [&](const Subspace& s) {
        FqMatrix lifted(w.q(), s.dim(), w.ambient());
        for (std::size_t r = 0; r < s.dim(); ++r)
            for (std::size_t c = 0; c < free.size(); ++c)
                lifted(r, free[c]) = s.basis()(r, c);
        return visit(Subspace::span(vstack(w.basis(), lifted)));
    }, caps.subspace);
}

} // namespace

void for_each_submodule(const KroneckerModule& m, const std::function<bool(const SubmodulePair&)>& visit,
                        const Caps& caps) {
    check_lattice_caps(m, caps);
    bool stop = false;
    for_each_subspace(m.d1(), m.q(), std::nullopt, [&](const Subspace& u1) {
        const Subspace w = forced_floor(m, u1);
        for_each_superspace(w, [&](const Subspace& u2) {
            if (!visit(SubmodulePair{u1, u2}))
                stop = true;
            return !stop;
        }, caps);
        return !stop;
    }, caps.subspace);
}

std::vector<SubmodulePair> enumerate_submodules(const KroneckerModule& m, const Caps& caps) {
    std::vector<SubmodulePair> out;
    for_each_submodule(m, [&](const SubmodulePair& s) {
        out.push_back(s);
        return true;
    }, caps);
    return out;
}

KroneckerModule restrict_to(const KroneckerModule& m, const SubmodulePair& s) {
    if (!is_submodule(m, s))
        throw InputError("restrict: pair is not closed under the arrows");
    const std::size_t k1 = s.u1.dim(), k2 = s.u2.dim();
    std::vector<FqMatrix> maps;
    maps.reserve(m.n());
    for (const auto& a : m.maps()) {
        FqMatrix induced(m.q(), k2, k1);
        if (k1 > 0 && k2 > 0) {
            const FqMatrix images = s.u1.basis() * a.transpose(); // row j = A u_j
            for (std::size_t j = 0; j < k1; ++j)
                for (std::size_t r = 0; r < k2; ++r)
                    induced(r, j) = images(j, s.u2.pivots()[r]);
        }
        maps.push_back(std::move(induced));
    }
    return KroneckerModule(m.n(), m.q(), k1, k2, std::move(maps));
}

KroneckerModule quotient(const KroneckerModule& m, const SubmodulePair& s) {
    if (!is_submodule(m, s))
        throw InputError("quotient: pair is not closed under the arrows");
    const auto c1 = s.u1.non_pivots();
    const std::size_t k1 = c1.size(), k2 = m.d2() - s.u2.dim();
    std::vector<FqMatrix> maps;
    maps.reserve(m.n());
    std::vector<Fq> col(m.d2());
    for (const auto& a : m.maps()) {
        FqMatrix induced(m.q(), k2, k1);
        for (std::size_t j = 0; j < k1; ++j) {
            for (std::size_t r = 0; r < m.d2(); ++r)
                col[r] = a(r, c1[j]);
            const auto coords = s.u2.quotient_coordinates(col);
            for (std::size_t r = 0; r < k2; ++r)
                induced(r, j) = coords[r];
        }
        maps.push_back(std::move(induced));
    }
    return KroneckerModule(m.n(), m.q(), k1, k2, std::move(maps));
}

// ---------------------------------------------------------------- Hom / Ext

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
    return {g.phi1 * f.phi1, g.phi2 * f.phi2};
}

bool is_iso(const ModuleMap& f) {
    return is_invertible(f.phi1) && is_invertible(f.phi2);
}

namespace {

bool is_nilpotent_matrix(const FqMatrix& a) {
    const std::size_t d = a.rows();
    if (d == 0)
        return true;
    // Ranks of powers strictly decrease until they stabilise.
    FqMatrix p = a;
    std::size_t prev = d + 1;
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t r = rank(p);
        if (r == 0)
            return true;
        if (r == prev)
            return false;
        prev = r;
        p = p * a;
    }
    return p.is_zero();
}

} // namespace

bool is_nilpotent_endo(const ModuleMap& f) {
    return is_nilpotent_matrix(f.phi1) && is_nilpotent_matrix(f.phi2);
}

bool is_module_map(const KroneckerModule& x, const KroneckerModule& y, const ModuleMap& f) {
    if (f.phi1.rows() != y.d1() || f.phi1.cols() != x.d1() || f.phi2.rows() != y.d2() ||
        f.phi2.cols() != x.d2())
        return false;
    for (unsigned i = 0; i < x.n(); ++i)
        if (y.map(i) * f.phi1 != f.phi2 * x.map(i))
            return false;
    return true;
}

HomExt hom_ext(const KroneckerModule& x, const KroneckerModule& y) {
    if (x.n() != y.n() || x.q() != y.q())
        throw InputError("hom: parameter mismatch");
    const unsigned q = x.q();
    const std::size_t x1 = x.d1(), x2 = x.d2(), y1 = y.d1(), y2 = y.d2();
    const std::size_t n1 = y1 * x1, n2 = y2 * x2;
    const std::size_t unknowns = n1 + n2;
    const std::size_t equations = std::size_t(x.n()) * y2 * x1;
    HomExt out;
    if (unknowns == 0) {
        out.ext_dim = equations;
        return out;
    }
    FqMatrix sys(q, equations, unknowns);
    for (unsigned i = 0; i < x.n(); ++i) {
        const FqMatrix& a = x.map(i); // x2 x x1
        const FqMatrix& b = y.map(i); // y2 x y1
        for (std::size_t r = 0; r < y2; ++r) {
            for (std::size_t col = 0; col < x1; ++col) {
                const std::size_t eq = (std::size_t(i) * y2 + r) * x1 + col;
                // (B phi1)[r][col] = sum_a B[r][a] phi1[a][col]
                for (std::size_t k = 0; k < y1; ++k)
                    sys(eq, k * x1 + col) = b(r, k);
                // -(phi2 A)[r][col] = -sum_c phi2[r][c] A[c][col]
                for (std::size_t c = 0; c < x2; ++c)
                    sys(eq, n1 + r * x2 + c) = neg_mod(a(c, col), q);
            }
        }
    }
    const Subspace ker = kernel_basis(sys);
    out.ext_dim = equations - (unknowns - ker.dim());
    out.hom_basis.reserve(ker.dim());
    for (std::size_t k = 0; k < ker.dim(); ++k) {
        const auto v = ker.basis().row(k);
        ModuleMap f{FqMatrix(q, y1, x1), FqMatrix(q, y2, x2)};
        for (std::size_t a = 0; a < y1; ++a)
            for (std::size_t b = 0; b < x1; ++b)
                f.phi1(a, b) = v[a * x1 + b];
        for (std::size_t a = 0; a < y2; ++a)
            for (std::size_t b = 0; b < x2; ++b)
                f.phi2(a, b) = v[n1 + a * x2 + b];
        out.hom_basis.push_back(std::move(f));
    }
    return out;
}

std::size_t hom_dim(const KroneckerModule& x, const KroneckerModule& y) {
    return hom_ext(x, y).hom_basis.size();
}

std::size_t ext_dim(const KroneckerModule& x, const KroneckerModule& y) { return hom_ext(x, y).ext_dim; }

std::vector<ModuleMap> end_basis(const KroneckerModule& m) { return hom_ext(m, m).hom_basis; }

// ---------------------------------------------------------------- (1,1) submodules

bool has_11_submodule(const KroneckerModule& m, const Caps& caps) {
    if (m.d1() == 0 || m.d2() == 0)
        return false;
    bool found = false;
    for_each_subspace(m.d1(), m.q(), 1, [&](const Subspace& line) {
        found = forced_floor(m, line).dim() == 1;
        return !found;
    }, caps.subspace);
    return found;
}

} // namespace grk
