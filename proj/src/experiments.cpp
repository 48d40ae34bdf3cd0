#include "grk/experiments.hpp"

#include "grk/errors.hpp"
#include "grk/gr_engine.hpp"
#include "grk/module_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>

namespace grk {

namespace {

std::string describe(const GRMeasure& a) { return format_measure(a); }

// Measures between a and b among the catalog's, preferring the families.
std::optional<std::pair<GRMeasure, std::string>> pick_witness(const GRMeasure& lo, const GRMeasure& hi, unsigned m,
                                                              const std::vector<GRMeasure>& realized) {
    auto present = [&](const GRMeasure& x) { return std::binary_search(realized.begin(), realized.end(), x); };
    for (unsigned k = m + 1; present(mu_upper(k)); ++k)
        if (lo < mu_upper(k) && mu_upper(k) < hi)
            return std::pair(mu_upper(k), std::string("family"));
    for (unsigned t = 1; present(mu_lower(t)); ++t)
        if (lo < mu_lower(t) && mu_lower(t) < hi)
            return std::pair(mu_lower(t), std::string("family"));
    if (auto between = find_between(lo, hi, realized))
        return std::pair(*between, std::string("catalog"));
    return std::nullopt;
}

std::optional<GapWitness> construct_witness(const GRMeasure& target, const GRMeasure& hi,
                                            const std::vector<const CatalogClass*>& reps,
                                            const std::vector<const CatalogClass*>& quotients, const Caps& caps) {
    constexpr std::size_t kReps = 4;
    constexpr std::uint64_t kTuplesPerPair = 1u << 12;
    for (std::size_t i = 0; i < std::min(kReps, reps.size()); ++i) {
        for (const auto* y : quotients) {
            GRMeasure found;
            auto e = find_extension(
                reps[i]->rep, y->rep,
                [&](const KroneckerModule& cand) {
                    if (!is_indecomposable(cand, caps))
                        return false;
                    found = gr_measure(cand, caps);
                    return target < found && found < hi;
                },
                kTuplesPerPair);
            if (e)
                return GapWitness{target, found, "constructed", std::move(*e)};
        }
    }
    return std::nullopt;
}

} // namespace

TakeoffReport takeoff_sequence(unsigned n, unsigned q, unsigned depth, unsigned max_length, const Caps& caps,
                               unsigned threads) {
    if (depth < 1)
        throw InputError("takeoff: depth must be at least 1");
    if (n < 2)
        throw InputError("takeoff: needs n >= 2");
    const auto pdims = preprojective_dims(n, depth);
    if (pdims[depth - 1].length() > static_cast<std::int64_t>(max_length))
        throw PreconditionError("takeoff: |P_" + std::to_string(depth) + "| = " +
                                std::to_string(pdims[depth - 1].length()) + " exceeds the scan length " +
                                std::to_string(max_length));
    TakeoffReport rep;
    rep.n = n;
    rep.q = q;
    rep.max_length = max_length;
    rep.sequence.push_back(GRMeasure{1});
    std::vector<KroneckerModule> ps;
    for (unsigned r = 2; r <= depth; ++r) {
        auto p = p_module(r, n, q);
        auto mu = gr_measure(p, caps);
        const auto& prev = rep.sequence.back();
        const auto want = extend(prev, static_cast<GRMeasure::value_type>(p.length()));
        if (mu != want)
            rep.violations.push_back("I_" + std::to_string(r) + " = " + describe(mu) + ", expected " + describe(want));
        if (!(prev < mu))
            rep.violations.push_back("I_" + std::to_string(r) + " does not ascend");
        rep.sequence.push_back(std::move(mu));
        ps.push_back(std::move(p));
    }

    ScanOptions opt;
    opt.n = n;
    opt.q = q;
    opt.max_length = max_length;
    opt.threads = threads;
    opt.caps = caps;
    opt.upper = rep.sequence.back();
    auto scan = scan_realized(opt);
    rep.skipped = scan.skipped;
    const auto realized = scan.realized();
    for (std::size_t i = 0; i + 1 < rep.sequence.size(); ++i)
        if (auto between = find_between(rep.sequence[i], rep.sequence[i + 1], realized))
            rep.violations.push_back(describe(*between) + " is realized strictly between " +
                                     describe(rep.sequence[i]) + " and " + describe(rep.sequence[i + 1]));

    std::size_t simples = 0;
    for (const auto& c : scan.classes)
        if (c.measure == rep.sequence.front())
            simples += c.rep.length() == 1;
        else if (c.measure < rep.sequence.front())
            rep.violations.push_back("measure below {1}: " + describe(c.measure));
    if (std::count_if(scan.classes.begin(), scan.classes.end(),
                      [&](const CatalogClass& c) { return c.measure == rep.sequence.front(); }) != 2 ||
        simples != 2)
        rep.violations.push_back("{1} is not realized by exactly the two simples");

    for (unsigned r = 2; r <= depth; ++r) {
        const auto& p = ps[r - 2];
        std::size_t count = 0;
        for (const auto& c : scan.classes) {
            if (c.measure != rep.sequence[r - 1])
                continue;
            ++count;
            if (!is_isomorphic(c.rep, p, caps))
                rep.violations.push_back(describe(c.measure) + " realized by a class of dim " +
                                         to_string(c.rep.dim()) + " other than P_" + std::to_string(r));
        }
        if (count != 1)
            rep.violations.push_back(describe(rep.sequence[r - 1]) + " realized by " + std::to_string(count) +
                                     " classes, expected 1");
    }
    rep.scanned = std::move(scan.classes);
    return rep;
}

std::optional<KroneckerModule> find_extension(const KroneckerModule& x, const KroneckerModule& y,
                                              const std::function<bool(const KroneckerModule&)>& accept,
                                              std::uint64_t limit) {
    if (x.n() != y.n() || x.q() != y.q())
        throw InputError("find_extension: modules over different (n, q)");
    const unsigned n = x.n(), q = x.q();
    const std::size_t rows = x.d2(), cols = y.d1();
    const std::size_t entries = n * rows * cols;
    if (entries == 0)
        return std::nullopt;
    std::vector<Fq> c(entries, 0);
    for (std::uint64_t tried = 0; tried < limit; ++tried) {
        // Next nonzero tuple, last entry fastest.
        std::size_t i = entries;
        while (i > 0) {
            --i;
            if (++c[i] < q)
                break;
            c[i] = 0;
            if (i == 0)
                return std::nullopt;
        }
        std::vector<FqMatrix> maps;
        for (unsigned a = 0; a < n; ++a) {
            FqMatrix block(q, rows, cols);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t k = 0; k < cols; ++k)
                    block(r, k) = c[(a * rows + r) * cols + k];
            const auto top = hstack(x.map(a), block);
            const auto bottom = hstack(FqMatrix(q, y.d2(), x.d1()), y.map(a));
            maps.push_back(vstack(top, bottom));
        }
        KroneckerModule e(n, q, x.d1() + y.d1(), x.d2() + y.d2(), std::move(maps));
        if (accept(e))
            return e;
    }
    return std::nullopt;
}

GapReport gap_scan(unsigned m, const ScanResult& catalog, const Caps& caps) {
    if (m < 1)
        throw InputError("gap_scan: m must be at least 1");
    GapReport rep;
    rep.m = m;
    rep.n = catalog.options.n;
    rep.q = catalog.options.q;
    rep.skipped = catalog.skipped;
    rep.classes = catalog.classes.size();
    for (const auto& c : catalog.classes)
        rep.max_length = std::max<unsigned>(rep.max_length, static_cast<unsigned>(c.rep.length()));
    if (2 * m + 1 > rep.max_length)
        throw PreconditionError("gap_scan: catalog is shorter than |mu^m| = " + std::to_string(2 * m + 1));

    const auto hi = mu_upper(m);
    const auto lo = mu_lower(m);
    const auto realized = catalog.realized();

    std::map<GRMeasure, std::vector<const CatalogClass*>> by_measure;
    for (const auto& c : catalog.classes)
        by_measure[c.measure].push_back(&c);
    std::vector<const CatalogClass*> quotients;
    for (const auto& c : catalog.classes)
        if (c.rep.d1() >= 1 && c.rep.length() <= 3)
            quotients.push_back(&c);
    std::stable_sort(quotients.begin(), quotients.end(), [](const CatalogClass* a, const CatalogClass* b) {
        return std::pair(a->rep.length(), a->rep.dim()) < std::pair(b->rep.length(), b->rep.dim());
    });

    for (const auto& i : realized) {
        if (!(i < hi))
            break;
        if (auto w = pick_witness(i, hi, m, realized)) {
            rep.witnesses.push_back(GapWitness{i, w->first, w->second, std::nullopt});
            continue;
        }
        if (auto w = construct_witness(i, hi, by_measure[i], quotients, caps))
            rep.witnesses.push_back(std::move(*w));
        else
            rep.unwitnessed.push_back(i);
    }

    for (const auto& c : catalog.classes) {
        const auto& mu = c.measure;
        if (lo < mu && mu < hi) {
            if (classify_position(c.rep.dim(), rep.n) != Position::Regular)
                rep.violations.push_back({"regular", mu, c.rep.dim(), "position " + to_string(c.position)});
            if (c.rep.length() <= 2 * m + 1)
                rep.violations.push_back({"length", mu, c.rep.dim(), "length " + std::to_string(c.rep.length())});
        } else if (hi < mu) {
            bool ok = false;
            for (unsigned t = 1; t <= m && !ok; ++t)
                ok = starts_with(mu, mu_upper(t));
            if (!ok)
                rep.violations.push_back({"starts_with", mu, c.rep.dim(), "no mu^t with t <= m is a prefix"});
        }
    }

    rep.note = "Empirical support only: the catalog holds " + std::to_string(rep.classes) +
               " classes of length <= " + std::to_string(rep.max_length) + " (exhaustive to " +
               std::to_string(catalog.options.max_length) +
               ", see skipped), while the absence of a direct predecessor concerns all lengths.";
    return rep;
}

std::string gap_report_json(const GapReport& report) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["m"] = report.m;
    j["n"] = report.n;
    j["q"] = report.q;
    j["max_length"] = report.max_length;
    j["classes"] = report.classes;
    j["unwitnessed"] = ordered_json::array();
    for (const auto& u : report.unwitnessed)
        j["unwitnessed"].push_back(format_measure(u));
    j["violations"] = ordered_json::array();
    for (const auto& v : report.violations)
        j["violations"].push_back({{"check", v.check},
                                   {"measure", format_measure(v.measure)},
                                   {"dim", {v.dim.x1, v.dim.x2}},
                                   {"detail", v.detail}});
    j["witnesses"] = ordered_json::array();
    for (const auto& w : report.witnesses) {
        ordered_json row{{"measure", format_measure(w.measure)},
                         {"witness", format_measure(w.witness)},
                         {"source", w.source}};
        if (w.module)
            row["module"] = ordered_json::parse(module_to_json(*w.module));
        j["witnesses"].push_back(std::move(row));
    }
    j["skipped"] = ordered_json::array();
    for (const auto& s : report.skipped)
        j["skipped"].push_back({{"dim", {s.dim.x1, s.dim.x2}}, {"reason", s.reason}});
    j["note"] = report.note;
    j["pass"] = report.ok();
    return j.dump(2);
}

std::vector<DimVector> regular_factor_violations(const KroneckerModule& m, std::size_t& quotients_checked,
                                                 const Caps& caps) {
    std::vector<DimVector> bad;
    for_each_submodule(
        m,
        [&](const SubmodulePair& s) {
            if (s.length() == 0 || s.length() == m.length())
                return true;
            const DimVector d{static_cast<std::int64_t>(m.d1() - s.u1.dim()),
                              static_cast<std::int64_t>(m.d2() - s.u2.dim())};
            if (classify_position(d, m.n()) != Position::Regular)
                return true;
            const auto f = quotient(m, s);
            if (!is_indecomposable(f, caps))
                return true;
            ++quotients_checked;
            if (!has_11_submodule(f, caps))
                bad.push_back(d);
            return true;
        },
        caps);
    return bad;
}

ScanResult union_catalog(unsigned n, unsigned q, unsigned exhaustive_length, unsigned families_length,
                         const Caps& caps, unsigned threads) {
    ScanOptions ex;
    ex.n = n;
    ex.q = q;
    ex.max_length = exhaustive_length;
    ex.threads = threads;
    ex.caps = caps;
    ScanOptions fam = ex;
    fam.mode = ScanMode::Families;
    fam.max_length = families_length;
    auto merged = merge_catalogs({scan_realized(ex), scan_realized(fam)}, caps);
    merged.options.max_length = exhaustive_length;
    return merged;
}

} // namespace grk
