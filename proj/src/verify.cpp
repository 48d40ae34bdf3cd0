#include "grk/verify.hpp"

#include "grk/ar_numerics.hpp"
#include "grk/errors.hpp"
#include "grk/experiments.hpp"
#include "grk/gr_engine.hpp"
#include "grk/random_modules.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace grk {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kMaxMessages = 20;

class Tally {
public:
    template <class Msg>
    void check(bool ok, Msg&& msg) {
        ++cases_;
        if (ok)
            return;
        ++failures_;
        if (messages_.size() < kMaxMessages)
            messages_.push_back(msg());
    }
    void note(std::string line) { notes_.push_back(std::move(line)); }
    void fail(std::string line) {
        ++failures_;
        if (messages_.size() < kMaxMessages)
            messages_.push_back(std::move(line));
    }
    void count(std::size_t extra_cases) { cases_ += extra_cases; }

    VerifySuiteResult finish(std::string name) const {
        VerifySuiteResult r;
        r.name = std::move(name);
        r.cases = cases_;
        r.failures = failures_;
        r.pass = failures_ == 0;
        r.details = notes_;
        r.details.insert(r.details.end(), messages_.begin(), messages_.end());
        return r;
    }

private:
    std::size_t cases_ = 0;
    std::size_t failures_ = 0;
    std::vector<std::string> notes_;
    std::vector<std::string> messages_;
};

std::string str(const DimVector& d) { return to_string(d); }
std::string str(const GRMeasure& m) { return format_measure(m); }

const ScanResult& catalog_for(const VerifyParams& p, unsigned n, unsigned q, unsigned ex, unsigned fam,
                              std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, ScanResult>& local) {
    if (p.catalog)
        return p.catalog(n, q, ex, fam);
    auto key = std::tuple(n, q, ex, fam);
    auto it = local.find(key);
    if (it == local.end())
        it = local.emplace(key, union_catalog(n, q, ex, fam, p.caps, p.threads)).first;
    return it->second;
}

VerifySuiteResult suite_arithmetic(const VerifyParams&) {
    Tally t;
    for (unsigned n = 1; n <= 8; ++n) {
        const auto c = cartan(n);
        const auto phi = coxeter(n);
        t.check(phi == -(c.transpose().inverse() * c), [&] { return "Phi != -C^-T C for n=" + std::to_string(n); });
        t.check(phi * coxeter_inv(n) == IntMat2::identity() && coxeter_inv(n) * phi == IntMat2::identity(),
                [&] { return "Phi Phi^-1 != I for n=" + std::to_string(n); });
    }
    for (std::int64_t n = 2; n <= 6; ++n) {
        const unsigned un = static_cast<unsigned>(n);
        const auto p = preprojective_dims(un, 9);
        const auto q = preinjective_dims(un, 9);
        const std::vector<std::pair<DimVector, DimVector>> expected{
            {p[1], {1, n}},
            {p[2], {n, n * n - 1}},
            {p[3], {n * n - 1, n * n * n - 2 * n}},
            {q[1], {n, 1}},
            {q[2], {n * n - 1, n}},
            {q[3], {n * n * n - 2 * n, n * n - 1}},
        };
        for (std::size_t i = 0; i < expected.size(); ++i)
            t.check(expected[i].first == expected[i].second, [&] {
                return "n=" + std::to_string(n) + ": " + str(expected[i].first) + " != " + str(expected[i].second);
            });
        for (std::size_t r = 1; r <= 6; ++r) {
            t.check(n * q[r] == q[r + 1] + q[r - 1], [&] {
                return "n dimQ_r != dimQ_{r+1} + dimQ_{r-1} at n=" + std::to_string(n) + " r=" + std::to_string(r);
            });
            t.check(n * p[r] == p[r + 1] + p[r - 1], [&] {
                return "n dimP_r != dimP_{r+1} + dimP_{r-1} at n=" + std::to_string(n) + " r=" + std::to_string(r + 1);
            });
        }
        for (std::size_t i = 0; i + 2 < p.size(); ++i)
            t.check(tau_dim(p[i + 2], un) == p[i], [&] {
                return "tau P_" + std::to_string(i + 3) + " != P_" + std::to_string(i + 1) + " at n=" + std::to_string(n);
            });
    }
    auto r = t.finish("arithmetic");
    r.details.insert(r.details.begin(), "Coxeter matrices n=1..8, P/Q dimension vectors n=2..6");
    return r;
}

VerifySuiteResult suite_euler(const VerifyParams& p) {
    Tally t;
    Rng rng(p.seed);
    const std::size_t pairs = p.samples.value_or(240);
    const unsigned ns[] = {2, 3, 4};
    const unsigned qs[] = {2, 3};
    for (std::size_t i = 0; i < pairs; ++i) {
        const unsigned n = ns[i % 3];
        const unsigned q = qs[(i / 3) % 2];
        auto pick = [&] {
            unsigned a = uniform(rng, 0, 4), b = uniform(rng, 0, 4);
            if (a + b == 0)
                a = 1;
            return random_module(rng, n, q, a, b);
        };
        const auto x = pick();
        const auto y = pick();
        const auto he = hom_ext(x, y);
        const auto lhs = static_cast<std::int64_t>(he.hom_basis.size()) - static_cast<std::int64_t>(he.ext_dim);
        const auto rhs = euler_form(x.dim(), y.dim(), n);
        t.check(lhs == rhs, [&] {
            return "n=" + std::to_string(n) + " q=" + std::to_string(q) + " dims " + str(x.dim()) + "," +
                   str(y.dim()) + ": hom-ext=" + std::to_string(lhs) + " euler=" + std::to_string(rhs);
        });
    }
    auto r = t.finish("euler");
    r.details.insert(r.details.begin(), std::to_string(pairs) + " random pairs, n in {2,3,4}, q in {2,3}");
    return r;
}

VerifySuiteResult suite_section22(const VerifyParams& p) {
    Tally t;
    const unsigned n = p.n.value_or(3), q = p.q.value_or(2), top = p.m.value_or(3);
    for (unsigned m = 1; m <= top; ++m) {
        std::vector<GRMeasure::value_type> odd;
        for (unsigned k = 0; k <= m; ++k)
            odd.push_back(2 * k + 1);
        const GRMeasure want_pp(odd);
        const auto pp = gr_measure(embed2k(preproj2k(m, q), n), p.caps);
        t.check(pp == want_pp, [&] { return "preprojective (" + std::to_string(m) + "," + std::to_string(m + 1) + "): " + str(pp); });
        std::vector<std::pair<std::string, KroneckerModule>> regulars;
        for (unsigned lambda = 0; lambda < q; ++lambda)
            regulars.emplace_back(std::to_string(lambda), embed2k(regular2k(m, lambda, q), n));
        regulars.emplace_back("inf", embed2k(regular2k_inf(m, q), n));
        for (const auto& [name, mod] : regulars) {
            const auto mu = gr_measure(mod, p.caps);
            t.check(mu == mu_lower(m), [&] { return "regular (" + std::to_string(m) + "," + std::to_string(m) + ") lambda=" + name + ": " + str(mu); });
        }
        const auto pi = gr_measure(embed2k(preinj2k(m, q), n), p.caps);
        t.check(pi == mu_upper(m), [&] { return "preinjective (" + std::to_string(m + 1) + "," + std::to_string(m) + "): " + str(pi); });
    }
    auto r = t.finish("section22");
    r.details.insert(r.details.begin(), "embedded 2-Kronecker families, m=1.." + std::to_string(top) + ", n=" +
                                            std::to_string(n) + ", q=" + std::to_string(q));
    return r;
}

VerifySuiteResult suite_lemma24(const VerifyParams& p) {
    Tally t;
    const unsigned n = p.n.value_or(3), q = p.q.value_or(2), max_len = p.max_length.value_or(5);
    std::size_t tuples = 0, indecomposables = 0;
    const GRMeasure m12{1, 2}, m123{1, 2, 3};
    for (unsigned len = 1; len <= max_len; ++len) {
        for (unsigned d1 = 0; d1 <= len; ++d1) {
            const unsigned d2 = len - d1;
            const DimVector dim{static_cast<std::int64_t>(d1), static_cast<std::int64_t>(d2)};
            for_each_tuple(
                n, q, d1, d2,
                [&](const KroneckerModule& mod) {
                    ++tuples;
                    if (!is_indecomposable(mod, p.caps))
                        return;
                    ++indecomposables;
                    const auto mu = gr_measure(mod, p.caps);
                    t.check((mu == m12) == (dim == DimVector{1, 1}) && (mu == m123) == (dim == DimVector{2, 1}),
                            [&] { return "indecomposable of dim " + str(dim) + " has measure " + str(mu); });
                },
                p.caps);
        }
    }
    auto r = t.finish("lemma24");
    r.details.insert(r.details.begin(), std::to_string(tuples) + " matrix tuples of length <= " + std::to_string(max_len) +
                                            ", " + std::to_string(indecomposables) + " indecomposable (n=" +
                                            std::to_string(n) + ", q=" + std::to_string(q) + ")");
    return r;
}

VerifySuiteResult suite_tau25(const VerifyParams& p) {
    Tally t;
    Rng rng(p.seed);
    const std::size_t per = p.samples.value_or(20);
    for (unsigned n : {3u, 4u}) {
        for (unsigned q : {2u, 3u, 5u}) {
            const auto p1 = simple_module(n, q, 2);
            const std::int64_t k = n;
            for (std::size_t i = 0; i < per; ++i) {
                const auto x = random_indecomposable(rng, n, q, 1, 1);
                const auto tx = tau_module(x, p.caps);
                const std::string where = "n=" + std::to_string(n) + " q=" + std::to_string(q) + " sample " + std::to_string(i);
                t.check(tx.dim() == DimVector{k * k - k - 1, k - 1}, [&] { return where + ": dim tau X = " + str(tx.dim()); });
                const auto he = hom_ext(x, tx);
                const auto h = static_cast<std::int64_t>(he.hom_basis.size());
                t.check(h >= k - 2 && h >= 1, [&] { return where + ": dim Hom(X, tau X) = " + std::to_string(h); });
                t.check(h - static_cast<std::int64_t>(he.ext_dim) == k - 2, [&] { return where + ": Euler form of (X, tau X)"; });
                const auto e = ext_dim(x, p1);
                t.check(e >= 1, [&] { return where + ": Ext(X, P_1) = 0"; });
                if (n == 3 && q == 2) {
                    const auto mu = gr_measure(tx, p.caps);
                    t.check(starts_with(mu, GRMeasure{1, 2, 3}), [&] { return where + ": mu(tau X) = " + str(mu); });
                }
            }
        }
    }
    auto r = t.finish("tau25");
    r.details.insert(r.details.begin(), std::to_string(per) + " random (1,1) modules per (n, q), n in {3,4}, q in {2,3,5}");
    return r;
}

VerifySuiteResult suite_oracle(const VerifyParams& p) {
    Tally t;
    Rng rng(p.seed);
    const unsigned n = p.n.value_or(3), q = p.q.value_or(2), max_len = p.max_length.value_or(4);
    const std::size_t samples = p.samples.value_or(60);
    std::size_t exhaustive = 0;
    for (unsigned len = 1; len <= max_len; ++len)
        for (unsigned d1 = 0; d1 <= len; ++d1)
            for_each_tuple(
                n, q, d1, len - d1,
                [&](const KroneckerModule& mod) {
                    if (!is_indecomposable(mod, p.caps))
                        return;
                    ++exhaustive;
                    const auto a = gr_measure(mod, p.caps), b = gr_measure_oracle(mod, p.caps);
                    t.check(a == b, [&] { return "dim " + str(mod.dim()) + ": " + str(a) + " vs oracle " + str(b); });
                },
                p.caps);
    const DimVector sample_dims[] = {{2, 3}, {3, 2}};
    for (std::size_t i = 0; i < samples; ++i) {
        const auto d = sample_dims[i % 2];
        const auto mod = random_indecomposable(rng, n, q, d.x1, d.x2);
        const auto a = gr_measure(mod, p.caps), b = gr_measure_oracle(mod, p.caps);
        t.check(a == b, [&] { return "sample " + std::to_string(i) + " dim " + str(d) + ": " + str(a) + " vs oracle " + str(b); });
    }
    auto r = t.finish("oracle");
    r.details.insert(r.details.begin(), std::to_string(exhaustive) + " indecomposable tuples of length <= " +
                                            std::to_string(max_len) + " and " + std::to_string(samples) +
                                            " sampled of length 5");
    return r;
}

VerifySuiteResult suite_takeoff(const VerifyParams& p) {
    Tally t;
    const unsigned n = p.n.value_or(3), q = p.q.value_or(2), depth = p.depth.value_or(2),
                   max_len = p.max_length.value_or(8);
    const auto rep = takeoff_sequence(n, q, depth, max_len, p.caps, p.threads);
    t.count(rep.sequence.size() + rep.scanned.size());
    for (const auto& v : rep.violations)
        t.fail(v);
    for (const auto& s : rep.skipped)
        t.fail("scan skipped " + str(s.dim) + ": " + s.reason);
    // One term past the scanned range, from the sequence alone.
    const auto next = p_module(depth + 1, n, q);
    const auto mu_next = gr_measure(next, p.caps);
    const auto want = extend(rep.sequence.back(), static_cast<GRMeasure::value_type>(next.length()));
    t.check(mu_next == want, [&] { return "mu(P_" + std::to_string(depth + 1) + ") = " + str(mu_next) + ", expected " + str(want); });

    ordered_json j;
    j["n"] = n;
    j["q"] = q;
    j["max_length"] = max_len;
    j["sequence"] = ordered_json::array();
    for (const auto& s : rep.sequence)
        j["sequence"].push_back(str(s));
    j["next"] = str(mu_next);
    j["scanned_classes"] = rep.scanned.size();
    j["violations"] = rep.violations;
    auto r = t.finish("takeoff");
    std::string seq;
    for (const auto& s : rep.sequence)
        seq += (seq.empty() ? "" : " < ") + str(s);
    r.details.insert(r.details.begin(), "I: " + seq + ", then mu(P_" + std::to_string(depth + 1) + ") = " + str(mu_next) +
                                            "; window scan to length " + std::to_string(max_len) + " kept " +
                                            std::to_string(rep.scanned.size()) + " classes");
    r.payload = j.dump();
    return r;
}

VerifySuiteResult suite_gapscan(const VerifyParams& p) {
    Tally t;
    const unsigned n = p.n.value_or(3), ex = p.max_length.value_or(7), fam = p.families_length.value_or(9);
    std::vector<unsigned> qs = p.q ? std::vector<unsigned>{*p.q} : std::vector<unsigned>{2, 3};
    std::vector<unsigned> ms = p.m ? std::vector<unsigned>{*p.m} : std::vector<unsigned>{1, 2};
    std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, ScanResult> local;
    ordered_json reports = ordered_json::array();
    for (unsigned q : qs) {
        const auto& cat = catalog_for(p, n, q, ex, fam, local);
        for (unsigned m : ms) {
            const auto rep = gap_scan(m, cat, p.caps);
            t.count(rep.witnesses.size() + rep.unwitnessed.size() + rep.classes);
            for (const auto& u : rep.unwitnessed)
                t.fail("q=" + std::to_string(q) + " m=" + std::to_string(m) + ": no witness above " + str(u));
            for (const auto& v : rep.violations)
                t.fail("q=" + std::to_string(q) + " m=" + std::to_string(m) + ": " + v.check + " fails for " +
                       str(v.measure) + " at " + str(v.dim) + " (" + v.detail + ")");
            std::size_t constructed = 0;
            for (const auto& w : rep.witnesses)
                constructed += w.source == "constructed";
            std::string skipped;
            for (const auto& s : rep.skipped)
                skipped += " " + str(s.dim);
            t.note("q=" + std::to_string(q) + " m=" + std::to_string(m) + ": " + std::to_string(rep.classes) +
                   " classes, " + std::to_string(rep.witnesses.size()) + " measures below mu^m witnessed (" +
                   std::to_string(constructed) + " by a constructed module), " +
                   std::to_string(rep.unwitnessed.size()) + " unwitnessed, " + std::to_string(rep.violations.size()) +
                   " violations" + (skipped.empty() ? "" : "; capped dims:" + skipped));
            reports.push_back(ordered_json::parse(gap_report_json(rep)));
        }
    }
    auto r = t.finish("gapscan");
    r.details.insert(r.details.begin(), "catalog: exhaustive to length " + std::to_string(ex) + " and families to " +
                                            std::to_string(fam) + "; bounded evidence, not a proof");
    r.payload = reports.dump();
    return r;
}

VerifySuiteResult suite_regfactor(const VerifyParams& p) {
    Tally t;
    const unsigned n = p.n.value_or(3), q = p.q.value_or(2), ex = p.max_length.value_or(7),
                   fam = p.families_length.value_or(9), top = p.m.value_or(3);
    std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, ScanResult> local;
    const auto& cat = catalog_for(p, n, q, ex, fam, local);
    std::size_t modules = 0, quotients = 0;
    for (const auto& c : cat.classes) {
        for (unsigned m = 1; m <= top; ++m) {
            const bool lower = c.measure == mu_lower(m), upper = c.measure == mu_upper(m);
            if (!lower && !upper)
                continue;
            const std::int64_t k = m;
            const DimVector shape = lower ? DimVector{k, k} : DimVector{k + 1, k};
            t.check(c.rep.dim() == shape, [&] { return "measure " + str(c.measure) + " at dim " + str(c.rep.dim()); });
            ++modules;
            for (const auto& d : regular_factor_violations(c.rep, quotients, p.caps))
                t.fail("module of measure " + str(c.measure) + " has a regular factor of dim " + str(d) +
                       " without a (1,1) submodule");
        }
    }
    t.count(quotients);
    auto r = t.finish("regfactor");
    r.details.insert(r.details.begin(), std::to_string(modules) + " catalogued modules with measure mu_m or mu^m (m <= " +
                                            std::to_string(top) + "), " + std::to_string(quotients) +
                                            " indecomposable regular quotients checked");
    return r;
}

bool sd_less(const GRMeasure& a, const GRMeasure& b) {
    std::vector<GRMeasure::value_type> sd;
    std::set_symmetric_difference(a.elements().begin(), a.elements().end(), b.elements().begin(),
                                  b.elements().end(), std::back_inserter(sd));
    return !sd.empty() && b.contains(sd.front());
}

VerifySuiteResult suite_krullschmidt(const VerifyParams& p) {
    Tally t;
    Rng rng(p.seed);
    const std::size_t triples = 10000;
    std::size_t prefix_cases = 0;
    for (std::size_t i = 0; i < triples; ++i) {
        const auto a = random_measure(rng, 10), b = random_measure(rng, 10), c = random_measure(rng, 10);
        const int rel = (a < b) + (a == b) + (b < a);
        t.check(rel == 1, [&] { return "trichotomy fails for " + str(a) + ", " + str(b); });
        t.check((a < b) == sd_less(a, b), [&] { return "order disagrees with the symmetric difference: " + str(a) + ", " + str(b); });
        t.check(!(a < b && b < c) || a < c, [&] { return "transitivity fails: " + str(a) + ", " + str(b) + ", " + str(c); });
        t.check((a <= b && b <= a) == (a == b), [&] { return "antisymmetry fails: " + str(a) + ", " + str(b); });

        // I < J < I' with I' starting with I forces J to start with I.
        std::vector<GRMeasure::value_type> tail(a.elements().begin(), a.elements().end());
        const GRMeasure::value_type from = a.empty() ? 1 : a.max() + 1;
        for (unsigned extra = uniform(rng, 1, 3), x = from; extra > 0; --extra, x += uniform(rng, 1, 3))
            tail.push_back(x);
        const GRMeasure longer(tail);
        std::vector<GRMeasure::value_type> mixed(a.elements().begin(),
                                                 a.elements().begin() + uniform(rng, 0, static_cast<unsigned>(a.size())));
        for (unsigned x = mixed.empty() ? 1 : mixed.back() + 1; x < 16; ++x)
            if (uniform(rng, 0, 2) == 0)
                mixed.push_back(x);
        const GRMeasure j(mixed);
        if (a < j && j < longer) {
            ++prefix_cases;
            t.check(starts_with(j, a), [&] { return "prefix fact fails: " + str(a) + " < " + str(j) + " < " + str(longer); });
        }
    }
    for (unsigned s = 1; s <= 30; ++s) {
        t.check(mu_lower(s) < mu_lower(s + 1), [&] { return "mu_t not increasing at " + std::to_string(s); });
        t.check(mu_upper(s + 1) < mu_upper(s), [&] { return "mu^t not decreasing at " + std::to_string(s); });
        for (unsigned u = 1; u <= 30; ++u)
            t.check(mu_lower(s) < mu_upper(u), [&] { return "mu_" + std::to_string(s) + " >= mu^" + std::to_string(u); });
    }

    const unsigned n = p.n.value_or(3), q = p.q.value_or(2);
    const std::vector<DimVector> dims{{1, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 2}, {2, 3}, {3, 2}};
    const std::size_t sums = p.samples.value_or(100);
    for (std::size_t i = 0; i < sums; ++i) {
        const unsigned k = uniform(rng, 2, 4);
        std::vector<KroneckerModule> parts;
        KroneckerModule total = KroneckerModule::zero_maps(n, q, 0, 0);
        for (unsigned j = 0; j < k; ++j) {
            DimVector d = dims[uniform(rng, 0, static_cast<unsigned>(dims.size() - 1))];
            if (n < 3 && (d == DimVector{1, 3} || d == DimVector{3, 1}))
                d = {1, 1};
            parts.push_back(random_indecomposable(rng, n, q, d.x1, d.x2));
            total = direct_sum(total, parts.back());
        }
        const auto mixed = random_basis_change(rng, total);
        const auto found = decompose(mixed, p.caps);
        bool ok = found.size() == parts.size();
        std::vector<bool> used(parts.size(), false);
        for (const auto& f : found) {
            if (!ok)
                break;
            ok = false;
            for (std::size_t j = 0; j < parts.size() && !ok; ++j)
                if (!used[j] && is_isomorphic(f, parts[j], p.caps))
                    used[j] = ok = true;
        }
        t.check(ok, [&] { return "sum " + std::to_string(i) + ": " + std::to_string(found.size()) + " summands recovered, " + std::to_string(parts.size()) + " expected"; });
    }
    auto r = t.finish("krullschmidt");
    r.details.insert(r.details.begin(), std::to_string(triples) + " random triples (" + std::to_string(prefix_cases) +
                                            " exercising the prefix fact), family inequalities up to 30, " +
                                            std::to_string(sums) + " randomized direct sums");
    return r;
}

using SuiteFn = VerifySuiteResult (*)(const VerifyParams&);

const std::map<std::string, SuiteFn>& suites() {
    static const std::map<std::string, SuiteFn> table{
        {"arithmetic", suite_arithmetic}, {"euler", suite_euler},       {"lemma24", suite_lemma24},
        {"section22", suite_section22},   {"tau25", suite_tau25},       {"regfactor", suite_regfactor},
        {"takeoff", suite_takeoff},       {"gapscan", suite_gapscan},   {"oracle", suite_oracle},
        {"krullschmidt", suite_krullschmidt},
    };
    return table;
}

} // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{"arithmetic", "euler",   "lemma24", "section22", "tau25",
                                                "regfactor",  "takeoff", "gapscan", "oracle",    "krullschmidt"};
    return names;
}

VerifySuiteResult run_verify_suite(const std::string& name, const VerifyParams& params) {
    const auto it = suites().find(name);
    if (it == suites().end())
        throw InputError("unknown verify suite: " + name);
    const auto start = std::chrono::steady_clock::now();
    auto r = it->second(params);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string verify_result_json(const VerifySuiteResult& r) {
    ordered_json j;
    j["suite"] = r.name;
    j["pass"] = r.pass;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    j["seconds"] = r.seconds;
    j["details"] = r.details;
    if (!r.payload.empty())
        j["report"] = ordered_json::parse(r.payload);
    return j.dump();
}

} // namespace grk
