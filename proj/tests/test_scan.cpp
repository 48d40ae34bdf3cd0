#include "grk/errors.hpp"
#include "grk/gr_engine.hpp"
#include "grk/scan.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

using namespace grk;
using namespace grk::testgen;

namespace {

std::map<DimVector, std::size_t> classes_per_dim(const ScanResult& r) {
    std::map<DimVector, std::size_t> out;
    for (const auto& c : r.classes)
        ++out[c.rep.dim()];
    return out;
}

// Literal enumeration followed by isomorphism tests within signature
// buckets; independent of the extension construction.
std::size_t literal_class_count(unsigned n, unsigned q, std::size_t d1, std::size_t d2) {
    std::unordered_map<ModuleSignature, std::vector<KroneckerModule>, ModuleSignatureHash> buckets;
    std::size_t count = 0;
    for_each_tuple(n, q, d1, d2, [&](const KroneckerModule& m) {
        if (!is_indecomposable(m))
            return;
        auto& reps = buckets[signature(m)];
        for (const auto& r : reps)
            if (is_isomorphic(r, m))
                return;
        reps.push_back(m);
        ++count;
    });
    return count;
}

// Closed points of degree e on the projective line over F_q.
std::size_t closed_points(unsigned e, unsigned q) {
    // Monic irreducibles of degree e (Moebius inversion), plus infinity for e = 1.
    auto pw = [](std::size_t b, unsigned k) {
        std::size_t r = 1;
        for (unsigned i = 0; i < k; ++i)
            r *= b;
        return r;
    };
    auto mobius = [](unsigned k) {
        int mu = 1;
        for (unsigned p = 2; p * p <= k; ++p) {
            if (k % p == 0) {
                k /= p;
                if (k % p == 0)
                    return 0;
                mu = -mu;
            }
        }
        if (k > 1)
            mu = -mu;
        return mu;
    };
    long long total = 0;
    for (unsigned d = 1; d <= e; ++d)
        if (e % d == 0)
            total += mobius(d) * static_cast<long long>(pw(q, e / d));
    return static_cast<std::size_t>(total / e) + (e == 1 ? 1 : 0);
}

} // namespace

TEST_CASE("n=3 q=2 length 4: realized measures") {
    ScanOptions opt;
    opt.n = 3;
    opt.q = 2;
    opt.max_length = 4;
    const auto r = scan_realized(opt);
    CHECK(r.skipped.empty());
    // {1,3,4} comes from (2,2) modules without a (1,1) submodule, e.g.
    // arrows I, J, J^T with J nilpotent; the oracle agrees on every class.
    const std::vector<GRMeasure> expected{{1},       {1, 2},    {1, 3},    {1, 4},
                                          {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {1, 2, 3, 4}};
    for (const auto& c : r.classes)
        CHECK(gr_measure_oracle(c.rep) == c.measure);
    auto got = r.realized();
    auto want = expected;
    std::sort(want.begin(), want.end());
    CHECK(got == want);
}

TEST_CASE("class counts against Gaussian binomials") {
    ScanOptions opt;
    opt.n = 3;
    opt.q = 2;
    opt.max_length = 4;
    const auto per = classes_per_dim(scan_realized(opt));
    // (1,w): a w-dimensional subspace of F_q^n spanned by the arrow images.
    CHECK(per.at({1, 1}) == gaussian_binomial(3, 1, 2));
    CHECK(per.at({1, 2}) == gaussian_binomial(3, 2, 2));
    CHECK(per.at({1, 3}) == 1);
    CHECK(per.at({2, 1}) == gaussian_binomial(3, 2, 2));
    CHECK(per.at({3, 1}) == 1);
    CHECK(per.count({1, 0}) == 1);
    CHECK(per.count({0, 1}) == 1);
    CHECK(per.count({0, 2}) == 0);
}

TEST_CASE("classical Kronecker class counts") {
    for (unsigned q : {2u, 3u}) {
        ScanOptions opt;
        opt.n = 2;
        opt.q = q;
        opt.max_length = 6;
        const auto r = scan_realized(opt);
        CHECK(r.skipped.empty());
        const auto per = classes_per_dim(r);
        for (unsigned m = 1; m <= 3; ++m) {
            std::size_t want = 0;
            for (unsigned e = 1; e <= m; ++e)
                if (m % e == 0)
                    want += closed_points(e, q);
            INFO("q=" << q << " m=" << m);
            CHECK(per.at({m, m}) == want);
        }
        for (unsigned m = 1; 2 * m + 1 <= 6; ++m) {
            CHECK(per.at({m, m + 1}) == 1);
            CHECK(per.at({m + 1, m}) == 1);
        }
        std::size_t total = 0;
        for (const auto& [d, c] : per)
            total += c;
        // S1, S2, the six (m, m +- 1) classes, and the regular ones.
        std::size_t regular = 0;
        for (unsigned m = 1; m <= 3; ++m)
            regular += per.at({m, m});
        CHECK(total == 2 + 4 + regular);
    }
}

TEST_CASE("extension construction agrees with literal enumeration") {
    ScanOptions opt;
    opt.n = 3;
    opt.q = 2;
    opt.max_length = 5;
    const auto per = classes_per_dim(scan_realized(opt));
    for (auto [d1, d2] : std::vector<std::pair<int, int>>{{2, 2}, {1, 3}, {3, 1}, {2, 3}, {3, 2}, {1, 4}}) {
        INFO("dim (" << d1 << "," << d2 << ")");
        const std::size_t lit = literal_class_count(3, 2, d1, d2);
        const auto it = per.find({d1, d2});
        CHECK((it == per.end() ? 0 : it->second) == lit);
    }
    ScanOptions o3 = opt;
    o3.q = 3;
    o3.max_length = 4;
    const auto per3 = classes_per_dim(scan_realized(o3));
    CHECK(per3.at({2, 2}) == literal_class_count(3, 3, 2, 2));
    CHECK(per3.at({1, 2}) == literal_class_count(3, 3, 1, 2));
}

TEST_CASE("window scans keep exactly the classes below the bound") {
    ScanOptions full;
    full.n = 3;
    full.q = 2;
    full.max_length = 6;
    const auto all = scan_realized(full);
    ScanOptions win = full;
    win.upper = GRMeasure{1, 2, 4};
    const auto part = scan_realized(win);
    std::multiset<std::pair<DimVector, GRMeasure>> a, b;
    for (const auto& c : all.classes)
        if (c.measure <= *win.upper)
            a.insert({c.rep.dim(), c.measure});
    for (const auto& c : part.classes)
        b.insert({c.rep.dim(), c.measure});
    CHECK(a == b);
}

TEST_CASE("determinism and thread independence") {
    ScanOptions opt;
    opt.n = 3;
    opt.q = 2;
    opt.max_length = 5;
    std::ostringstream one, four;
    write_catalog_csv(one, scan_realized(opt));
    opt.threads = 4;
    write_catalog_csv(four, scan_realized(opt));
    CHECK(one.str() == four.str());

    ScanOptions s;
    s.mode = ScanMode::Sampled;
    s.samples = 300;
    s.seed = 99;
    s.max_length = 5;
    std::ostringstream x, y;
    write_catalog_csv(x, scan_realized(s));
    write_catalog_csv(y, scan_realized(s));
    CHECK(x.str() == y.str());
}

TEST_CASE("sampled classes are a subset of the exhaustive ones") {
    ScanOptions opt;
    opt.max_length = 5;
    const auto all = scan_realized(opt);
    opt.mode = ScanMode::Sampled;
    opt.samples = 500;
    const auto some = scan_realized(opt);
    std::set<std::pair<DimVector, GRMeasure>> a;
    for (const auto& c : all.classes)
        a.insert({c.rep.dim(), c.measure});
    for (const auto& c : some.classes)
        CHECK(a.count({c.rep.dim(), c.measure}) == 1);
}

TEST_CASE("families mode") {
    ScanOptions opt;
    opt.mode = ScanMode::Families;
    opt.max_length = 9;
    const auto r = scan_realized(opt);
    const auto realized = r.realized();
    for (unsigned m = 1; m <= 4; ++m) {
        CHECK(std::binary_search(realized.begin(), realized.end(), mu_lower(m)));
        CHECK(std::binary_search(realized.begin(), realized.end(), mu_upper(m)));
    }
    for (const auto& c : r.classes) {
        CHECK(c.rep.length() <= 9);
        CHECK(c.provenance.rfind("family:", 0) == 0);
        CHECK(is_indecomposable(c.rep));
    }
    // tau seeds of (1,1) regulars: (5,2) and (2,5).
    bool tau_seed = false, tauinv_seed = false;
    for (const auto& c : r.classes) {
        tau_seed |= c.rep.dim() == DimVector{5, 2};
        tauinv_seed |= c.rep.dim() == DimVector{2, 5};
    }
    CHECK(tau_seed);
    CHECK(tauinv_seed);
}

TEST_CASE("catalog CSV format") {
    ScanOptions opt;
    opt.max_length = 2;
    std::ostringstream out;
    write_catalog_csv(out, scan_realized(opt));
    const std::string text = out.str();
    CHECK(text.rfind("dim1,dim2,measure,position,iso_count,provenance\n", 0) == 0);
    CHECK(text.find("1,1,\"{1,2}\",regular,7,exhaustive") != std::string::npos);
    CHECK(text.find("0,1,\"{1}\",preprojective,1,exhaustive") != std::string::npos);
}

TEST_CASE("capped dimension vectors are flagged, not dropped") {
    ScanOptions opt;
    opt.max_length = 6;
    opt.caps.extension_candidates = 50;
    const auto r = scan_realized(opt);
    REQUIRE(!r.skipped.empty());
    std::ostringstream out;
    write_catalog_csv(out, r);
    CHECK(out.str().find("skipped:") != std::string::npos);
    for (const auto& s : r.skipped)
        for (const auto& c : r.classes)
            CHECK(c.rep.dim() != s.dim);
}

TEST_CASE("tuple enumeration cap") {
    Caps caps;
    caps.tuples = 1000;
    CHECK_THROWS_AS(for_each_tuple(3, 2, 2, 2, [](const KroneckerModule&) {}, caps), CapExceeded);
    std::size_t count = 0;
    for_each_tuple(2, 2, 1, 2, [&](const KroneckerModule&) { ++count; });
    CHECK(count == 16);
}
