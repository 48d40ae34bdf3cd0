#pragma once

#include "grk/ar_numerics.hpp"
#include "grk/caps.hpp"
#include "grk/fq_linalg.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace grk {

// A representation of the n-Kronecker quiver over F_q: spaces F_q^d1 at
// vertex 1 and F_q^d2 at vertex 2, and n linear maps from vertex 1 to vertex
// 2, each a d2 x d1 matrix acting on column vectors. With this orientation
// the simple at vertex 2, dimension vector (0,1), is projective.
class KroneckerModule {
public:
    KroneckerModule() = default;
    // Validates shapes and modulus; throws InputError.
    KroneckerModule(unsigned n, unsigned q, std::size_t d1, std::size_t d2, std::vector<FqMatrix> maps);

    static KroneckerModule zero_maps(unsigned n, unsigned q, std::size_t d1, std::size_t d2);

    unsigned n() const noexcept { return n_; }
    unsigned q() const noexcept { return q_; }
    std::size_t d1() const noexcept { return d1_; }
    std::size_t d2() const noexcept { return d2_; }
    std::size_t length() const noexcept { return d1_ + d2_; }
    DimVector dim() const noexcept {
        return {static_cast<std::int64_t>(d1_), static_cast<std::int64_t>(d2_)};
    }
    const std::vector<FqMatrix>& maps() const noexcept { return maps_; }
    const FqMatrix& map(std::size_t i) const { return maps_.at(i); }

    // Entry-wise equality of the matrix tuples (not isomorphism).
    friend bool operator==(const KroneckerModule&, const KroneckerModule&) = default;

private:
    unsigned n_ = 1;
    unsigned q_ = 2;
    std::size_t d1_ = 0;
    std::size_t d2_ = 0;
    std::vector<FqMatrix> maps_;
};

// Re-checks every invariant of raw data; throws InputError on violation.
void validate(unsigned n, unsigned q, std::size_t d1, std::size_t d2, const std::vector<FqMatrix>& maps);
void validate(const KroneckerModule& m);

KroneckerModule direct_sum(const KroneckerModule& a, const KroneckerModule& b);
// Change of basis: maps become g2 * A_i * g1^{-1}. Both must be invertible.
KroneckerModule conjugate(const KroneckerModule& m, const FqMatrix& g1, const FqMatrix& g2);

// (U1, U2) with A_i U1 contained in U2 for every arrow.
struct SubmodulePair {
    Subspace u1;
    Subspace u2;

    std::size_t length() const noexcept { return u1.dim() + u2.dim(); }
    DimVector dim() const noexcept {
        return {static_cast<std::int64_t>(u1.dim()), static_cast<std::int64_t>(u2.dim())};
    }
    friend bool operator==(const SubmodulePair&, const SubmodulePair&) = default;
    friend auto operator<=>(const SubmodulePair& a, const SubmodulePair& b) {
        if (auto c = a.length() <=> b.length(); c != 0)
            return c;
        if (auto c = a.u1 <=> b.u1; c != 0)
            return c;
        return a.u2 <=> b.u2;
    }
};

// Sum of the images A_i U1: the smallest U2 making (U1, U2) a submodule.
Subspace forced_floor(const KroneckerModule& m, const Subspace& u1);
// The submodule generated by U1, i.e. (U1, forced_floor(U1)).
SubmodulePair generated_submodule(const KroneckerModule& m, const Subspace& u1);
bool is_submodule(const KroneckerModule& m, const SubmodulePair& s);

// Every submodule exactly once, U1 in canonical subspace order, then U2.
void for_each_submodule(const KroneckerModule& m, const std::function<bool(const SubmodulePair&)>& visit,
                        const Caps& caps = {});
std::vector<SubmodulePair> enumerate_submodules(const KroneckerModule& m, const Caps& caps = {});

KroneckerModule restrict_to(const KroneckerModule& m, const SubmodulePair& s);
KroneckerModule quotient(const KroneckerModule& m, const SubmodulePair& s);

// A morphism X -> Y: phi1 is y1 x x1, phi2 is y2 x x2.
struct ModuleMap {
    FqMatrix phi1;
    FqMatrix phi2;
    friend bool operator==(const ModuleMap&, const ModuleMap&) = default;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f); // g after f
bool is_iso(const ModuleMap& f);
bool is_nilpotent_endo(const ModuleMap& f);
bool is_module_map(const KroneckerModule& x, const KroneckerModule& y, const ModuleMap& f);

struct HomExt {
    std::vector<ModuleMap> hom_basis;
    std::size_t ext_dim = 0;
};

// Kernel and cokernel of (phi1, phi2) -> (B_i phi1 - phi2 A_i)_i.
HomExt hom_ext(const KroneckerModule& x, const KroneckerModule& y);
std::size_t hom_dim(const KroneckerModule& x, const KroneckerModule& y);
std::size_t ext_dim(const KroneckerModule& x, const KroneckerModule& y);
std::vector<ModuleMap> end_basis(const KroneckerModule& m);

// Certified test. Throws PreconditionError for the zero module and Undecided
// when neither the radical test nor the exhaustive search applies.
bool is_indecomposable(const KroneckerModule& m, const Caps& caps = {});
// Search of all q^dim End elements for an idempotent other than 0 and id.
// Independent of is_indecomposable's fast path; used to cross-check it.
bool has_nontrivial_idempotent_exhaustive(const KroneckerModule& m, const Caps& caps = {});

// Indecomposable summands, in a canonical order (by dimension vector).
std::vector<KroneckerModule> decompose(const KroneckerModule& m, const Caps& caps = {});

bool is_isomorphic(const KroneckerModule& a, const KroneckerModule& b, const Caps& caps = {});
// Same answer when `a` is known to be indecomposable (not re-checked): then a
// basis of Hom(a, b) contains an isomorphism iff a and b are isomorphic.
bool is_isomorphic_to_indecomposable(const KroneckerModule& a, const KroneckerModule& b);

// True iff some submodule with dimension vector (1,1) has a nonzero arrow.
bool has_11_submodule(const KroneckerModule& m, const Caps& caps = {});

// Auslander-Reiten translate through the two sink reflections, and its
// inverse through the two source reflections.
KroneckerModule tau_module(const KroneckerModule& m, const Caps& caps = {});
KroneckerModule tau_inverse_module(const KroneckerModule& m, const Caps& caps = {});

// Named constructions.
KroneckerModule simple_module(unsigned n, unsigned q, int vertex);
KroneckerModule p_module(unsigned r, unsigned n, unsigned q);
KroneckerModule q_module(unsigned r, unsigned n, unsigned q);
// Pads a 2-Kronecker module with n-2 zero maps.
KroneckerModule embed2k(const KroneckerModule& m2, unsigned n);
// (m, m): f1 = I, f2 = J_m(lambda).
KroneckerModule regular2k(unsigned m, unsigned lambda, unsigned q);
// (m, m): f1 = J_m(0), f2 = I (the point at infinity).
KroneckerModule regular2k_inf(unsigned m, unsigned q);
// (m, m+1): f1 = [I; 0], f2 = [0; I].
KroneckerModule preproj2k(unsigned m, unsigned q);
// (m+1, m): f1 = [I | 0], f2 = [0 | I].
KroneckerModule preinj2k(unsigned m, unsigned q);

// By name, with integer parameters as text:
//   simple <vertex> | p <r> | q <r> | regular2k <m> <lambda|inf> |
//   regular2k_inf <m> | preproj2k <m> | preinj2k <m>
// The 2-Kronecker kinds are embedded into the n-Kronecker quiver.
KroneckerModule construct_family(const std::string& kind, const std::vector<std::string>& params, unsigned n,
                                 unsigned q);

} // namespace grk
