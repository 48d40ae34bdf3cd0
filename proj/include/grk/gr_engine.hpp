#pragma once

#include "grk/caps.hpp"
#include "grk/gr_order.hpp"
#include "grk/kronecker.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace grk {

// Gabriel-Roiter measure: the order-maximal length set over chains of
// indecomposable submodules. Empty for the zero module.
//
// Every indecomposable submodule with nonzero vertex-1 part is generated by
// that part: for X = (U1, U2) indecomposable and U1 != 0, U2 must equal
// sum_i A_i U1, since any complement of that sum in U2 would split off as
// copies of the simple (0,1). So the indecomposable submodules of M are the
// simples at vertex 2 plus gen(U) = (U, sum_i A_i U) for the subspaces U of
// the vertex-1 space with gen(U) indecomposable. The measure is computed by
// one pass over those subspaces in increasing dimension:
//   nu(U)  = best measure of an indecomposable submodule of gen(U)
//          = max(nu(H) for hyperplanes H of U, {1} if gen(U) has a vertex-2
//                part, mu(gen U) if gen(U) is indecomposable)
//   mu(gen U) = (max over the same proper candidates) u {|gen U|}
GRMeasure gr_measure(const KroneckerModule& m, const Caps& caps = {});

// Direct transcription of the definition: enumerates the full submodule
// lattice, keeps the indecomposable members and walks every chain. Only for
// |M| <= caps.oracle_length.
GRMeasure gr_measure_oracle(const KroneckerModule& m, const Caps& caps = {});

// Proper indecomposable submodules of maximal measure (M indecomposable and
// not simple). Every quotient M/X is checked to be indecomposable.
std::vector<SubmodulePair> gr_submodules(const KroneckerModule& m, const Caps& caps = {});
bool is_gr_inclusion(const KroneckerModule& m, const SubmodulePair& x, const Caps& caps = {});
// A chain M_1 < ... < M_t of indecomposable submodules whose lengths are the
// elements of gr_measure(m). The last entry is the whole module when m is
// indecomposable.
std::vector<SubmodulePair> witness_chain(const KroneckerModule& m, const Caps& caps = {});

// Iso-invariant fingerprint used to bucket modules before a certified
// isomorphism test: dimension vector, the rank of every arrow combination
// sum c_i A_i (c up to scalars), and the histogram of dim sum_i A_i L over
// lines L of the vertex-1 space.
struct ModuleSignature {
    std::vector<std::uint32_t> words;
    friend bool operator==(const ModuleSignature&, const ModuleSignature&) = default;
    friend auto operator<=>(const ModuleSignature&, const ModuleSignature&) = default;
};

struct ModuleSignatureHash {
    std::size_t operator()(const ModuleSignature& s) const noexcept;
};

ModuleSignature signature(const KroneckerModule& m, const Caps& caps = {});

// Measure memo keyed on isomorphism class: signature bucket, then a certified
// isomorphism test inside the bucket. Inserts are idempotent; safe to share
// between threads.
class MeasureCache {
public:
    explicit MeasureCache(Caps caps = {});
    MeasureCache(const MeasureCache&) = delete;
    MeasureCache& operator=(const MeasureCache&) = delete;
    ~MeasureCache();

    GRMeasure measure(const KroneckerModule& m);
    std::size_t size() const;
    std::size_t hits() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace grk
