#include "grk/scan.hpp"

#include "grk/errors.hpp"
#include "grk/gr_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <ostream>
#include <random>
#include <thread>
#include <unordered_map>

namespace grk {

std::string to_string(ScanMode mode) {
    switch (mode) {
    case ScanMode::Exhaustive: return "exhaustive";
    case ScanMode::Sampled: return "sampled";
    case ScanMode::Families: return "families";
    }
    return "?";
}

ScanMode parse_scan_mode(const std::string& text) {
    if (text == "exhaustive")
        return ScanMode::Exhaustive;
    if (text == "sampled")
        return ScanMode::Sampled;
    if (text == "families")
        return ScanMode::Families;
    throw InputError("unknown scan mode '" + text + "' (exhaustive, sampled, families)");
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_at = count;
    std::exception_ptr failure;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned k = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    for (unsigned t = 0; t < k; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

void for_each_tuple(unsigned n, unsigned q, std::size_t d1, std::size_t d2,
                    const std::function<void(const KroneckerModule&)>& visit, const Caps& caps) {
    const std::size_t entries = std::size_t(n) * d1 * d2;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < entries; ++i) {
        total *= q;
        if (total > caps.tuples)
            throw CapExceeded("tuple enumeration: " + std::to_string(q) + "^" + std::to_string(entries) +
                              " exceeds the cap of " + std::to_string(caps.tuples));
    }
    std::vector<Fq> digits(entries, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<FqMatrix> maps;
        maps.reserve(n);
        std::size_t pos = 0;
        for (unsigned i = 0; i < n; ++i) {
            FqMatrix a(q, d2, d1);
            for (std::size_t r = 0; r < d2; ++r)
                for (std::size_t c = 0; c < d1; ++c)
                    a(r, c) = digits[pos++];
            maps.push_back(std::move(a));
        }
        visit(KroneckerModule(n, q, d1, d2, std::move(maps)));
        for (std::size_t j = entries; j-- > 0;) {
            if (++digits[j] < q)
                break;
            digits[j] = 0;
        }
    }
}

namespace {

std::string dim_text(const DimVector& d) { return to_string(d); }

bool operator_le(const DimVector& a, const DimVector& b) { return a.x1 <= b.x1 && a.x2 <= b.x2; }

// Iso-class store: signature buckets, certified test inside a bucket.
class ClassStore {
public:
    explicit ClassStore(Caps caps) : caps_(caps) {}

    // Index of the class isomorphic to m, inserting a new one if needed.
    // The second member is true when m started a new class.
    std::pair<std::size_t, bool> insert(const KroneckerModule& m, const ModuleSignature& sig) {
        auto& bucket = buckets_[sig];
        for (auto idx : bucket)
            if (is_isomorphic_to_indecomposable(modules_[idx], m))
                return {idx, false};
        bucket.push_back(modules_.size());
        modules_.push_back(m);
        return {modules_.size() - 1, true};
    }

    std::optional<std::size_t> find(const KroneckerModule& m, const ModuleSignature& sig) const {
        auto it = buckets_.find(sig);
        if (it == buckets_.end())
            return std::nullopt;
        for (auto idx : it->second)
            if (is_isomorphic_to_indecomposable(modules_[idx], m))
                return idx;
        return std::nullopt;
    }

    const KroneckerModule& module(std::size_t i) const { return modules_[i]; }
    std::size_t size() const { return modules_.size(); }

private:
    Caps caps_;
    std::vector<KroneckerModule> modules_;
    std::unordered_map<ModuleSignature, std::vector<std::size_t>, ModuleSignatureHash> buckets_;
};

Position position_of(const KroneckerModule& m) {
    return classify_position(m.dim(), m.n(), static_cast<std::int64_t>(m.length()));
}

void measure_all(std::vector<CatalogClass>& out, const std::vector<KroneckerModule>& reps,
                 const std::string& provenance, const ScanOptions& opt) {
    std::vector<GRMeasure> mus(reps.size());
    parallel_for(reps.size(), opt.threads, [&](std::size_t i) { mus[i] = gr_measure(reps[i], opt.caps); });
    for (std::size_t i = 0; i < reps.size(); ++i)
        out.push_back({reps[i], std::move(mus[i]), position_of(reps[i]), provenance});
}

// Projective points of F_q^k: nonzero vectors whose first nonzero entry is 1.
template <class Visit>
void for_each_point(std::size_t k, unsigned q, Visit&& visit) {
    std::vector<Fq> x(k, 0);
    for (std::size_t lead = 0; lead < k; ++lead) {
        std::fill(x.begin(), x.end(), 0);
        x[lead] = 1;
        for (;;) {
            visit(x);
            bool wrapped = true;
            for (std::size_t j = k; j > lead + 1;) {
                --j;
                if (++x[j] < q) {
                    wrapped = false;
                    break;
                }
                x[j] = 0;
            }
            if (wrapped)
                break;
        }
    }
}

std::uint64_t points_count(std::size_t k, unsigned q) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i)
        total *= q;
    return (total - 1) / (q - 1);
}

// A smaller module together with the trivial extension data.
struct Base {
    KroneckerModule module;
    Subspace trivial; // inside F_q^(n * fibre)
};

// Extension of a simple at vertex 1 by N: a new column w_i for each arrow.
// Trivial data: (B_i u)_i for u in N1, laid out arrow by arrow.
Subspace trivial_vertex1(const KroneckerModule& nb) {
    const std::size_t b = nb.d2();
    FqMatrix gens(nb.q(), nb.d1(), nb.n() * b);
    for (std::size_t j = 0; j < nb.d1(); ++j)
        for (unsigned i = 0; i < nb.n(); ++i)
            for (std::size_t r = 0; r < b; ++r)
                gens(j, i * b + r) = nb.map(i)(r, j);
    return Subspace::span(gens);
}

// Extension of N by a simple at vertex 2: a new row r_i for each arrow.
// Trivial data: (lambda B_i)_i for lambda in the dual of N2.
Subspace trivial_vertex2(const KroneckerModule& nb) {
    const std::size_t a = nb.d1();
    FqMatrix gens(nb.q(), nb.d2(), nb.n() * a);
    for (std::size_t r = 0; r < nb.d2(); ++r)
        for (unsigned i = 0; i < nb.n(); ++i)
            for (std::size_t c = 0; c < a; ++c)
                gens(r, i * a + c) = nb.map(i)(r, c);
    return Subspace::span(gens);
}

KroneckerModule glue(const Base& base, int direction, std::span<const Fq> data) {
    const KroneckerModule& nb = base.module;
    const unsigned q = nb.q();
    std::vector<FqMatrix> maps;
    maps.reserve(nb.n());
    if (direction == 1) {
        const std::size_t b = nb.d2();
        for (unsigned i = 0; i < nb.n(); ++i) {
            FqMatrix col(q, b, 1);
            for (std::size_t r = 0; r < b; ++r)
                col(r, 0) = data[i * b + r];
            maps.push_back(hstack(nb.map(i), col));
        }
        return KroneckerModule(nb.n(), q, nb.d1() + 1, nb.d2(), std::move(maps));
    }
    const std::size_t a = nb.d1();
    for (unsigned i = 0; i < nb.n(); ++i) {
        FqMatrix row(q, 1, a);
        for (std::size_t c = 0; c < a; ++c)
            row(0, c) = data[i * a + c];
        maps.push_back(vstack(nb.map(i), row));
    }
    return KroneckerModule(nb.n(), q, nb.d1(), nb.d2() + 1, std::move(maps));
}

class ExhaustiveBuilder {
public:
    explicit ExhaustiveBuilder(const ScanOptions& opt) : opt_(opt) {}

    ScanResult run() {
        ScanResult result;
        result.options = opt_;
        for (unsigned len = 1; len <= opt_.max_length; ++len) {
            for (unsigned d1 = 0; d1 <= len; ++d1) {
                const DimVector dim{std::int64_t(d1), std::int64_t(len - d1)};
                if (len == 1) {
                    add_classes(result, {simple_module(opt_.n, opt_.q, d1 == 1 ? 1 : 2)});
                    continue;
                }
                if (dim.x1 == 0 || dim.x2 == 0)
                    continue;
                build_dim(result, dim);
            }
        }
        return result;
    }

private:
    void add_classes(ScanResult& result, const std::vector<KroneckerModule>& reps) {
        std::vector<CatalogClass> fresh;
        measure_all(fresh, reps, "exhaustive", opt_);
        for (auto& c : fresh) {
            if (opt_.upper && c.measure > *opt_.upper)
                continue;
            kept_by_dim_[c.rep.dim()].push_back(kept_.size());
            kept_.push_back(c.rep);
            result.classes.push_back(std::move(c));
        }
    }

    // Kept classes whose dimension vectors fit inside `bound`, plus the
    // first skipped dimension vector they depend on, if any.
    std::optional<DimVector> blocked_by(const DimVector& bound) const {
        for (const auto& s : skipped_)
            if (operator_le(s, bound))
                return s;
        return std::nullopt;
    }

    std::vector<Base> bases(const DimVector& bound, int direction) const {
        std::vector<std::size_t> pool;
        for (const auto& [d, ids] : kept_by_dim_)
            if (operator_le(d, bound))
                pool.insert(pool.end(), ids.begin(), ids.end());
        std::sort(pool.begin(), pool.end());
        std::vector<Base> out;
        std::vector<std::size_t> pick;
        // Multisets of pool entries with total dimension `bound`.
        std::function<void(std::size_t, DimVector)> rec = [&](std::size_t from, DimVector rest) {
            if (rest.x1 == 0 && rest.x2 == 0) {
                KroneckerModule nb = KroneckerModule::zero_maps(opt_.n, opt_.q, 0, 0);
                for (auto id : pick)
                    nb = direct_sum(nb, kept_[id]);
                Subspace t = direction == 1 ? trivial_vertex1(nb) : trivial_vertex2(nb);
                out.push_back({std::move(nb), std::move(t)});
                return;
            }
            for (std::size_t p = from; p < pool.size(); ++p) {
                const DimVector d = kept_[pool[p]].dim();
                if (!operator_le(d, rest))
                    continue;
                pick.push_back(pool[p]);
                rec(p, {rest.x1 - d.x1, rest.x2 - d.x2});
                pick.pop_back();
            }
        };
        rec(0, bound);
        return out;
    }

    void build_dim(ScanResult& result, const DimVector& dim) {
        struct Plan {
            int direction;
            std::vector<Base> bases;
            std::uint64_t candidates = 0;
        };
        std::vector<Plan> plans;
        std::string reason;
        for (int direction : {1, 2}) {
            // The vertex-2 direction extends a quotient, which a window does
            // not constrain.
            if (direction == 2 && opt_.upper)
                continue;
            const DimVector bound = direction == 1 ? DimVector{dim.x1 - 1, dim.x2} : DimVector{dim.x1, dim.x2 - 1};
            if (auto s = blocked_by(bound)) {
                reason = "depends on skipped " + dim_text(*s);
                continue;
            }
            Plan plan{direction, bases(bound, direction), 0};
            const std::size_t fibre = direction == 1 ? std::size_t(opt_.n) * dim.x2 : std::size_t(opt_.n) * dim.x1;
            for (const auto& b : plan.bases)
                plan.candidates += points_count(fibre - b.trivial.dim(), opt_.q);
            plans.push_back(std::move(plan));
        }
        std::sort(plans.begin(), plans.end(),
                  [](const Plan& a, const Plan& b) { return a.candidates < b.candidates; });
        if (plans.empty()) {
            skip(result, dim, reason);
            return;
        }
        Plan& plan = plans.front();
        if (plan.candidates > opt_.caps.extension_candidates) {
            skip(result, dim,
                 std::to_string(plan.candidates) + " extension candidates exceed the cap of " +
                     std::to_string(opt_.caps.extension_candidates));
            return;
        }

        // Chunks of bases are screened in parallel; classes are then formed
        // sequentially in base order, so the output does not depend on the
        // number of workers.
        ClassStore store(opt_.caps);
        std::vector<KroneckerModule> reps;
        const std::size_t chunk = 64;
        for (std::size_t lo = 0; lo < plan.bases.size(); lo += chunk) {
            const std::size_t hi = std::min(plan.bases.size(), lo + chunk);
            std::vector<std::vector<std::pair<KroneckerModule, ModuleSignature>>> found(hi - lo);
            parallel_for(hi - lo, opt_.threads, [&](std::size_t k) {
                const Base& base = plan.bases[lo + k];
                const auto free = base.trivial.non_pivots();
                std::vector<Fq> data(base.trivial.ambient(), 0);
                for_each_point(free.size(), opt_.q, [&](const std::vector<Fq>& x) {
                    for (std::size_t j = 0; j < free.size(); ++j)
                        data[free[j]] = x[j];
                    KroneckerModule m = glue(base, plan.direction, data);
                    if (!is_indecomposable(m, opt_.caps))
                        return;
                    ModuleSignature sig = signature(m, opt_.caps);
                    found[k].emplace_back(std::move(m), std::move(sig));
                });
            });
            for (auto& list : found)
                for (auto& [m, sig] : list)
                    if (store.insert(m, sig).second)
                        reps.push_back(m);
        }
        add_classes(result, reps);
    }

    void skip(ScanResult& result, const DimVector& dim, const std::string& reason) {
        skipped_.push_back(dim);
        result.skipped.push_back({dim, reason});
    }

    const ScanOptions& opt_;
    std::vector<KroneckerModule> kept_;
    std::map<DimVector, std::vector<std::size_t>> kept_by_dim_;
    std::vector<DimVector> skipped_;
};

ScanResult scan_sampled(const ScanOptions& opt) {
    ScanResult result;
    result.options = opt;
    std::mt19937_64 rng(opt.seed);
    ClassStore store(opt.caps);
    std::vector<KroneckerModule> reps;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        const unsigned len = std::uniform_int_distribution<unsigned>(1, opt.max_length)(rng);
        const unsigned d1 = std::uniform_int_distribution<unsigned>(0, len)(rng);
        const unsigned d2 = len - d1;
        std::vector<FqMatrix> maps;
        for (unsigned i = 0; i < opt.n; ++i) {
            FqMatrix a(opt.q, d2, d1);
            for (std::size_t r = 0; r < d2; ++r)
                for (std::size_t c = 0; c < d1; ++c)
                    a(r, c) = Fq(std::uniform_int_distribution<unsigned>(0, opt.q - 1)(rng));
            maps.push_back(std::move(a));
        }
        KroneckerModule m(opt.n, opt.q, d1, d2, std::move(maps));
        if (!is_indecomposable(m, opt.caps))
            continue;
        if (store.insert(m, signature(m, opt.caps)).second)
            reps.push_back(std::move(m));
    }
    std::stable_sort(reps.begin(), reps.end(), [](const KroneckerModule& a, const KroneckerModule& b) {
        return std::pair(a.length(), a.dim()) < std::pair(b.length(), b.dim());
    });
    measure_all(result.classes, reps, "sampled", opt);
    return result;
}

ScanResult scan_families(const ScanOptions& opt) {
    const unsigned n = opt.n, q = opt.q, max_len = opt.max_length;
    std::vector<std::pair<std::string, KroneckerModule>> found;
    auto add = [&](std::string name, KroneckerModule m) {
        if (m.length() <= max_len)
            found.emplace_back(std::move(name), std::move(m));
    };
    add("S1", simple_module(n, q, 1));
    add("S2", simple_module(n, q, 2));
    const auto pdims = preprojective_dims(n, max_len);
    for (unsigned r = 2; r <= pdims.size() && pdims[r - 1].length() <= max_len; ++r)
        add("P" + std::to_string(r), p_module(r, n, q));
    const auto qdims = preinjective_dims(n, max_len);
    for (unsigned r = 1; r < qdims.size() && qdims[r].length() <= max_len; ++r)
        add("Q" + std::to_string(r), q_module(r, n, q));

    std::vector<std::pair<std::string, KroneckerModule>> embedded;
    if (n >= 2) {
        for (unsigned m = 1; 2 * m <= max_len; ++m) {
            for (unsigned lambda = 0; lambda < q; ++lambda)
                embedded.emplace_back("R" + std::to_string(m) + "(" + std::to_string(lambda) + ")",
                                      embed2k(regular2k(m, lambda, q), n));
            embedded.emplace_back("R" + std::to_string(m) + "(inf)", embed2k(regular2k_inf(m, q), n));
        }
        for (unsigned m = 1; 2 * m + 1 <= max_len; ++m) {
            embedded.emplace_back("PP" + std::to_string(m), embed2k(preproj2k(m, q), n));
            embedded.emplace_back("PI" + std::to_string(m), embed2k(preinj2k(m, q), n));
        }
    }
    for (const auto& [name, m] : embedded) {
        add(name, m);
        // tau-orbit seeds inside the length bound.
        KroneckerModule cur = m;
        std::string cur_name = name;
        for (;;) {
            const DimVector next = tau_dim(cur.dim(), n);
            if (next.x1 < 0 || next.x2 < 0 || next.length() == 0 || next.length() > max_len)
                break;
            try {
                cur = tau_module(cur, opt.caps);
            } catch (const PreconditionError&) {
                break;
            }
            cur_name = "tau " + cur_name;
            add(cur_name, cur);
        }
        cur = m;
        cur_name = name;
        for (;;) {
            const DimVector next = tau_inv_dim(cur.dim(), n);
            if (next.x1 < 0 || next.x2 < 0 || next.length() == 0 || next.length() > max_len)
                break;
            try {
                cur = tau_inverse_module(cur, opt.caps);
            } catch (const PreconditionError&) {
                break;
            }
            cur_name = "tauinv " + cur_name;
            add(cur_name, cur);
        }
    }

    ClassStore store(opt.caps);
    std::vector<KroneckerModule> reps;
    std::vector<std::string> names;
    for (auto& [name, m] : found) {
        if (store.insert(m, signature(m, opt.caps)).second) {
            reps.push_back(m);
            names.push_back(name);
        }
    }
    ScanResult result;
    result.options = opt;
    std::vector<GRMeasure> mus(reps.size());
    parallel_for(reps.size(), opt.threads, [&](std::size_t i) { mus[i] = gr_measure(reps[i], opt.caps); });
    std::vector<std::size_t> order(reps.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::pair(reps[a].length(), reps[a].dim()) < std::pair(reps[b].length(), reps[b].dim());
    });
    for (auto i : order)
        result.classes.push_back({reps[i], mus[i], position_of(reps[i]), "family:" + names[i]});
    return result;
}

} // namespace

ScanResult scan_realized(const ScanOptions& opt) {
    require_prime(opt.q);
    if (opt.n < 2)
        throw InputError("scan: n must be at least 2");
    if (opt.max_length < 1)
        throw InputError("scan: max_length must be at least 1");
    switch (opt.mode) {
    case ScanMode::Exhaustive: return ExhaustiveBuilder(opt).run();
    case ScanMode::Sampled: return scan_sampled(opt);
    case ScanMode::Families: return scan_families(opt);
    }
    throw InputError("scan: unknown mode");
}

ScanResult merge_catalogs(const std::vector<ScanResult>& parts, const Caps& caps) {
    ScanResult out;
    if (parts.empty())
        return out;
    out.options = parts.front().options;
    ClassStore store(caps);
    for (const auto& part : parts) {
        if (part.options.n != out.options.n || part.options.q != out.options.q)
            throw InputError("merge_catalogs: catalogs over different (n, q)");
        out.options.max_length = std::max(out.options.max_length, part.options.max_length);
        for (const auto& c : part.classes)
            if (store.insert(c.rep, signature(c.rep, caps)).second)
                out.classes.push_back(c);
        out.skipped.insert(out.skipped.end(), part.skipped.begin(), part.skipped.end());
    }
    std::stable_sort(out.classes.begin(), out.classes.end(), [](const CatalogClass& a, const CatalogClass& b) {
        return std::pair(a.rep.length(), a.rep.dim()) < std::pair(b.rep.length(), b.rep.dim());
    });
    return out;
}

std::vector<ScanRecord> ScanResult::records() const {
    std::map<std::tuple<std::size_t, DimVector, GRMeasure, std::string>, ScanRecord> rows;
    for (const auto& c : classes) {
        auto key = std::tuple(c.rep.length(), c.rep.dim(), c.measure, c.provenance);
        auto [it, fresh] = rows.try_emplace(key, ScanRecord{c.rep.dim(), c.measure, c.position, 0, c.provenance});
        ++it->second.iso_count;
    }
    std::vector<ScanRecord> out;
    out.reserve(rows.size());
    for (auto& [k, r] : rows)
        out.push_back(std::move(r));
    return out;
}

std::vector<GRMeasure> ScanResult::realized() const {
    std::vector<GRMeasure> out;
    for (const auto& c : classes)
        out.push_back(c.measure);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void write_catalog_csv(std::ostream& out, const ScanResult& result) {
    out << "dim1,dim2,measure,position,iso_count,provenance\n";
    for (const auto& r : result.records())
        out << r.dim.x1 << ',' << r.dim.x2 << ",\"" << format_measure(r.measure) << "\"," << to_string(r.position)
            << ',' << r.iso_count << ',' << r.provenance << '\n';
    for (const auto& s : result.skipped)
        out << s.dim.x1 << ',' << s.dim.x2 << ",,,0,\"skipped: " << s.reason << "\"\n";
}

} // namespace grk
