#pragma once

#include "grk/caps.hpp"
#include "grk/scan.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace grk {

// Unset fields take the suite's own default.
struct VerifyParams {
    std::optional<unsigned> n;
    std::optional<unsigned> q;
    std::optional<unsigned> m;
    std::optional<unsigned> depth;
    std::optional<unsigned> max_length;
    std::optional<unsigned> families_length;
    std::optional<std::size_t> samples;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    Caps caps{};
    // Supplies catalogs by (n, q, exhaustive length, families length); the
    // acceptance runner shares one between suites. Defaults to union_catalog.
    std::function<const ScanResult&(unsigned, unsigned, unsigned, unsigned)> catalog;
};

struct VerifySuiteResult {
    std::string name;
    bool pass = false;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double seconds = 0;
    // Summary lines first, then up to a few failure messages.
    std::vector<std::string> details;
    // Suite-specific machine-readable payload (JSON), may be empty.
    std::string payload;
};

// arithmetic euler lemma24 section22 tau25 regfactor takeoff gapscan oracle
// krullschmidt
const std::vector<std::string>& verify_suite_names();

// Throws InputError for an unknown suite name.
VerifySuiteResult run_verify_suite(const std::string& name, const VerifyParams& params = {});

std::string verify_result_json(const VerifySuiteResult& result);

} // namespace grk
