#pragma once

#include "grk/caps.hpp"
#include "grk/gr_order.hpp"
#include "grk/kronecker.hpp"
#include "grk/scan.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace grk {

// Take-off part: I_1 = {1}, I_r = mu(P_r).
struct TakeoffReport {
    unsigned n = 3;
    unsigned q = 2;
    unsigned max_length = 0;
    std::vector<GRMeasure> sequence; // I_1 .. I_depth
    // Classes of the cross-check scan, which keeps measures <= I_depth only.
    std::vector<CatalogClass> scanned;
    std::vector<SkippedDim> skipped;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty() && skipped.empty(); }
};

// Computes I_1..I_depth on constructed P_r, checks I_r = I_{r-1} u {|P_r|}
// and that the sequence ascends, then runs an exhaustive window scan to
// max_length and checks that no realized measure lies strictly between two
// consecutive terms and that each I_r (r >= 2) in range is realized by P_r
// alone. Requires |P_depth| <= max_length.
TakeoffReport takeoff_sequence(unsigned n, unsigned q, unsigned depth, unsigned max_length,
                               const Caps& caps = {}, unsigned threads = 1);

struct GapWitness {
    GRMeasure measure;
    GRMeasure witness;
    std::string source; // "family", "catalog" or "constructed"
    std::optional<KroneckerModule> module; // set for constructed witnesses
};

struct GapViolation {
    std::string check; // "regular", "length" or "starts_with"
    GRMeasure measure;
    DimVector dim;
    std::string detail;
};

// Bounded evidence that mu^m has no direct predecessor, over a finite
// catalog. Empirical support only: the statement concerns all lengths.
struct GapReport {
    unsigned m = 1;
    unsigned n = 3;
    unsigned q = 2;
    unsigned max_length = 0;
    std::vector<GRMeasure> unwitnessed;
    std::vector<GapViolation> violations;
    std::vector<GapWitness> witnesses;
    std::vector<SkippedDim> skipped;
    std::size_t classes = 0;
    std::string note;

    bool ok() const { return unwitnessed.empty() && violations.empty(); }
};

// Over the catalog:
//  (a) every realized I < mu^m has a realized I'' with I < I'' < mu^m. The
//      largest realized measure below mu^m has no witness inside a finite
//      catalog; for it a module is built as an extension of one of its
//      representatives by a small indecomposable (S1 first, then the (1,1)
//      classes, then longer ones) and its measure is used if it lies in
//      the gap;
//  (b) every realized I with mu_m < I < mu^m comes from a regular module of
//      length > 2m+1;
//  (c) every realized I > mu^m starts with some mu^t, t <= m.
// max_length is the longest catalogued length, recorded in the report.
GapReport gap_scan(unsigned m, const ScanResult& catalog, const Caps& caps = {});

// Modules e with 0 -> x -> e -> y -> 0, built from block maps
// [[A_i^x, C_i], [0, A_i^y]] with the C_i running through all nonzero
// tuples in lexicographic order. Returns the first e that `accept` takes;
// at most `limit` tuples are tried.
std::optional<KroneckerModule> find_extension(const KroneckerModule& x, const KroneckerModule& y,
                                              const std::function<bool(const KroneckerModule&)>& accept,
                                              std::uint64_t limit);

std::string gap_report_json(const GapReport& report);

// Regular-factor property on one module: every indecomposable regular
// quotient M/S over the submodule lattice has a (1,1) submodule. Returns the
// dimension vectors of the offending quotients; counts checked quotients.
std::vector<DimVector> regular_factor_violations(const KroneckerModule& m, std::size_t& quotients_checked,
                                                 const Caps& caps = {});

// Exhaustive catalog to `exhaustive_length` merged with the families catalog
// to `families_length`.
ScanResult union_catalog(unsigned n, unsigned q, unsigned exhaustive_length, unsigned families_length,
                         const Caps& caps = {}, unsigned threads = 1);

} // namespace grk
