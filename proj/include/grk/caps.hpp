#pragma once

#include <cstdint>

namespace grk {

// Enumeration and search bounds. Exceeding one raises CapExceeded (or
// Undecided when a certified answer was needed).
struct Caps {
    // q^d bound for enumerating subspaces of F_q^d.
    std::uint64_t subspace = 1024;
    // Largest module length whose full submodule lattice may be enumerated.
    unsigned submodule_length = 12;
    // q^dim End bound for the exhaustive idempotent search.
    std::uint64_t idempotent = std::uint64_t{1} << 20;
    // q^dim Hom bound for the exhaustive isomorphism scan.
    std::uint64_t hom_scan = std::uint64_t{1} << 20;
    // q^(n d1 d2) bound for literal matrix-tuple enumeration per dimension vector.
    std::uint64_t tuples = std::uint64_t{1} << 20;
    // One-point extension candidates per dimension vector in exhaustive scans.
    std::uint64_t extension_candidates = std::uint64_t{1} << 23;
    // Largest length accepted by the brute-force chain oracle.
    unsigned oracle_length = 5;
};

} // namespace grk
