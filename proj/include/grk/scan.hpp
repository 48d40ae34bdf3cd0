#pragma once

#include "grk/ar_numerics.hpp"
#include "grk/caps.hpp"
#include "grk/gr_order.hpp"
#include "grk/kronecker.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace grk {

enum class ScanMode { Exhaustive, Sampled, Families };

std::string to_string(ScanMode mode);
ScanMode parse_scan_mode(const std::string& text);

// One isomorphism class of indecomposables with a stored representative.
struct CatalogClass {
    KroneckerModule rep;
    GRMeasure measure;
    Position position = Position::Regular;
    std::string provenance; // "exhaustive", "sampled" or "family:<name>"
};

// Catalog row: all classes sharing dimension vector, measure and provenance.
struct ScanRecord {
    DimVector dim;
    GRMeasure measure;
    Position position = Position::Regular;
    std::size_t iso_count = 0;
    std::string provenance;
};

struct SkippedDim {
    DimVector dim;
    std::string reason;
};

struct ScanOptions {
    unsigned n = 3;
    unsigned q = 2;
    unsigned max_length = 4;
    ScanMode mode = ScanMode::Exhaustive;
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    Caps caps{};
    // Exhaustive mode only: keep just the classes with measure <= upper. The
    // result is still complete for that window: every submodule of M has
    // measure <= mu(M), and in this mode M is only ever built as an
    // extension of a simple at vertex 1 by its submodule (H, V2).
    std::optional<GRMeasure> upper;
};

struct ScanResult {
    ScanOptions options;
    // Ordered by length, then dimension vector, then generation order.
    std::vector<CatalogClass> classes;
    std::vector<SkippedDim> skipped;

    std::vector<ScanRecord> records() const;
    std::vector<GRMeasure> realized() const; // distinct, ascending
};

// Exhaustive mode builds every isomorphism class of indecomposables with
// length <= max_length. A class of dimension (d1, d2) is an extension of a
// simple by a module of dimension (d1-1, d2) (vertex-1 direction) or of a
// module of dimension (d1, d2-1) by a simple (vertex-2 direction); the
// smaller module runs over all direct sums of already catalogued classes and
// the extension data over a complement of the trivial extensions, up to
// scalars. The direction with fewer candidates is used. A dimension vector
// whose candidate count exceeds caps.extension_candidates, or which needs a
// skipped one, is recorded in `skipped` instead.
ScanResult scan_realized(const ScanOptions& options);

// Union of catalogs over the same (n, q), deduplicated by isomorphism; the
// first occurrence keeps its provenance.
ScanResult merge_catalogs(const std::vector<ScanResult>& parts, const Caps& caps = {});

// Every matrix tuple of the given dimension vector, in lexicographic order of
// the entries. Throws CapExceeded when q^(n d1 d2) > caps.tuples.
void for_each_tuple(unsigned n, unsigned q, std::size_t d1, std::size_t d2,
                    const std::function<void(const KroneckerModule&)>& visit, const Caps& caps = {});

// dim1,dim2,measure,position,iso_count,provenance. Skipped dimension
// vectors appear as rows with an empty measure and provenance "skipped: ...".
void write_catalog_csv(std::ostream& out, const ScanResult& result);

// Runs fn(i) for i in [0, count) on up to `threads` workers. Exceptions are
// rethrown on the caller's thread (the one with the lowest index wins).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

} // namespace grk
