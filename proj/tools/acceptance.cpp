#include "grk/experiments.hpp"
#include "grk/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <tuple>

using namespace grk;

namespace {

struct Criterion {
    int id;
    const char* suite;
    double limit_seconds;
};

// Wall-clock limits per criterion.
constexpr Criterion kCriteria[] = {
    {1, "arithmetic", 1.0},     {2, "euler", 60.0},      {3, "section22", 300.0}, {4, "lemma24", 600.0},
    {5, "tau25", 300.0},        {6, "oracle", 300.0},    {7, "takeoff", 900.0},   {8, "gapscan", 900.0},
    {9, "regfactor", 600.0},    {10, "krullschmidt", 120.0},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance run: one line per criterion"};
    unsigned threads = 1;
    std::vector<int> only;
    bool verbose = false;
    app.add_option("--threads", threads, "worker threads for the scans")->check(CLI::PositiveNumber);
    app.add_option("--only", only, "run just these criteria (1-10)")->check(CLI::Range(1, 10));
    app.add_flag("-v,--verbose", verbose, "print each suite's summary lines");
    CLI11_PARSE(app, argc, argv);

    // Criteria 8 and 9 share the q = 2 catalog; it is charged to the first
    // suite that asks for it.
    std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, ScanResult> catalogs;
    VerifyParams params;
    params.threads = threads;
    params.catalog = [&](unsigned n, unsigned q, unsigned ex, unsigned fam) -> const ScanResult& {
        const auto key = std::tuple(n, q, ex, fam);
        auto it = catalogs.find(key);
        if (it == catalogs.end())
            it = catalogs.emplace(key, union_catalog(n, q, ex, fam, params.caps, threads)).first;
        return it->second;
    };

    const std::set<int> selected(only.begin(), only.end());
    int failed = 0;
    for (const auto& c : kCriteria) {
        if (!selected.empty() && !selected.count(c.id))
            continue;
        VerifySuiteResult r;
        try {
            r = run_verify_suite(c.suite, params);
        } catch (const std::exception& e) {
            r.name = c.suite;
            r.details = {std::string("error: ") + e.what()};
        }
        const bool in_time = r.seconds < c.limit_seconds;
        const bool pass = r.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d  %-12s %s  cases=%zu failures=%zu  %.2f s (limit %.0f s)%s\n", c.id, c.suite,
                    pass ? "PASS" : "FAIL", r.cases, r.failures, r.seconds, c.limit_seconds,
                    in_time ? "" : "  over time");
        if (verbose || !r.pass)
            for (const auto& d : r.details)
                std::printf("    %s\n", d.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
