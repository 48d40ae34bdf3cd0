#include "grk/gr_engine.hpp"

#include "grk/errors.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace grk {

namespace {

Subspace common_kernel(const KroneckerModule& m) {
    FqMatrix s(m.q(), 0, m.d1());
    for (const auto& a : m.maps())
        s = vstack(s, a);
    return kernel_basis(s);
}

// Subspaces of F_q^d in canonical order with their hyperplanes. Independent
// of the module, so built once per (d, q) and shared.
struct Lattice {
    std::vector<Subspace> nodes;
    std::vector<std::vector<std::uint32_t>> hyperplanes;
    // nodes[i] = nodes[parent[i]] + span(extra[i]) for i > 0.
    std::vector<std::uint32_t> parent;
    std::vector<std::vector<Fq>> extra;
};

const Lattice& lattice(std::size_t d, unsigned q, std::uint64_t cap) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, unsigned>, std::unique_ptr<Lattice>> cache;
    // The cap is checked on every call, cached or not.
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < d; ++i) {
        size *= q;
        if (size > cap)
            throw CapExceeded("subspace enumeration: " + std::to_string(q) + "^" + std::to_string(d) +
                              " exceeds the cap of " + std::to_string(cap));
    }
    std::lock_guard lock(mu);
    auto& slot = cache[{d, q}];
    if (slot)
        return *slot;
    auto lat = std::make_unique<Lattice>();
    std::unordered_map<Subspace, std::uint32_t, SubspaceHash> index;
    for_each_subspace(
        d, q, std::nullopt,
        [&](const Subspace& u) {
            index.emplace(u, static_cast<std::uint32_t>(lat->nodes.size()));
            lat->nodes.push_back(u);
            return true;
        },
        cap);
    const std::size_t count = lat->nodes.size();
    lat->hyperplanes.resize(count);
    lat->parent.assign(count, 0);
    lat->extra.resize(count);
    for (std::size_t i = 1; i < count; ++i) {
        const Subspace& u = lat->nodes[i];
        for (const auto& h : subspaces_of(u, u.dim() - 1, cap))
            lat->hyperplanes[i].push_back(index.at(h));
        // The canonical basis minus its last row spans a hyperplane.
        const Subspace h = Subspace::span(u.basis().row_block(0, u.dim() - 1));
        lat->parent[i] = index.at(h);
        const auto last = u.basis().row(u.dim() - 1);
        lat->extra[i].assign(last.begin(), last.end());
    }
    slot = std::move(lat);
    return *slot;
}

Subspace add_images(const KroneckerModule& m, const Subspace& w, std::span<const Fq> v) {
    FqMatrix gens = w.basis();
    for (const auto& a : m.maps()) {
        const auto img = apply(a, v);
        FqMatrix row(m.q(), 1, m.d2());
        std::copy(img.begin(), img.end(), row.row(0).begin());
        gens = vstack(gens, row);
    }
    return Subspace::span(gens);
}

// gen(U) as a module in the canonical bases of U and W.
KroneckerModule generated_module(const KroneckerModule& m, const Subspace& u, const Subspace& w) {
    const std::size_t k1 = u.dim(), k2 = w.dim();
    std::vector<FqMatrix> maps;
    maps.reserve(m.n());
    for (const auto& a : m.maps()) {
        FqMatrix induced(m.q(), k2, k1);
        if (k1 > 0 && k2 > 0) {
            const FqMatrix images = u.basis() * a.transpose();
            for (std::size_t j = 0; j < k1; ++j)
                for (std::size_t r = 0; r < k2; ++r)
                    induced(r, j) = images(j, w.pivots()[r]);
        }
        maps.push_back(std::move(induced));
    }
    return KroneckerModule(m.n(), m.q(), k1, k2, std::move(maps));
}

enum class Status : std::uint8_t { Unknown, Indecomposable, Decomposable };

// Per-node values over the lattice of the vertex-1 space:
//   nu(U) = best measure of an indecomposable submodule of gen(U)
//   mu(U) = measure of gen(U) when it is indecomposable
// upper(U) is nu(U) computed as if every gen(U') were indecomposable; extend
// and max are monotone, so it bounds nu(U) from above and children whose
// bound cannot beat the running maximum are never evaluated.
class MeasureTable {
public:
    MeasureTable(const KroneckerModule& m, const Caps& caps)
        : m_(m), caps_(caps), lat_(lattice(m.d1(), m.q(), caps.subspace)) {
        if (m.length() > caps.submodule_length)
            throw CapExceeded("module length " + std::to_string(m.length()) + " exceeds submodule cap " +
                              std::to_string(caps.submodule_length));
        const std::size_t count = lat_.nodes.size();
        w_.resize(count);
        status_.assign(count, Status::Unknown);
        upper_.resize(count);
        nu_.resize(count);
        done_.assign(count, false);
        w_[0] = Subspace::zero(m.q(), m.d2());
        const Subspace kernel = common_kernel(m);
        const bool faithful = kernel.dim() == 0;
        for (std::size_t i = 1; i < count; ++i) {
            w_[i] = add_images(m, w_[lat_.parent[i]], lat_.extra[i]);
            const std::size_t k = lat_.nodes[i].dim();
            if (k == 1)
                status_[i] = Status::Indecomposable;
            else if (!faithful && subspace_intersection(lat_.nodes[i], kernel).dim() > 0)
                status_[i] = Status::Decomposable;
            GRMeasure below = floor_measure(i);
            for (auto h : lat_.hyperplanes[i])
                if (upper_[h] > below)
                    below = upper_[h];
            upper_[i] = status_[i] == Status::Decomposable ? below : extend(below, length(i));
        }
        done_[0] = true;
    }

    std::size_t size() const { return lat_.nodes.size(); }
    const Subspace& u(std::size_t i) const { return lat_.nodes[i]; }
    const Subspace& w(std::size_t i) const { return w_[i]; }
    std::size_t top() const { return size() - 1; }

    const GRMeasure& nu(std::size_t i) {
        if (!done_[i]) {
            GRMeasure below = below_of(i);
            if (status(i) == Status::Indecomposable)
                nu_[i] = extend(below, length(i));
            else
                nu_[i] = std::move(below);
            done_[i] = true;
        }
        return nu_[i];
    }

    // mu(gen U) if indecomposable.
    std::optional<GRMeasure> mu(std::size_t i) {
        if (i == 0 || status(i) != Status::Indecomposable)
            return std::nullopt;
        return nu(i);
    }

    GRMeasure measure() {
        GRMeasure best = nu(top());
        if (m_.d2() > 0 && GRMeasure{1} > best)
            best = GRMeasure{1};
        return best;
    }

    // Best measure over proper indecomposable submodules of gen(U).
    GRMeasure below_of(std::size_t i) {
        GRMeasure below = floor_measure(i);
        std::vector<std::uint32_t> order(lat_.hyperplanes[i]);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return upper_[a] > upper_[b]; });
        for (auto h : order) {
            if (!(upper_[h] > below))
                break;
            const GRMeasure& v = nu(h);
            if (v > below)
                below = v;
        }
        return below;
    }

private:
    GRMeasure floor_measure(std::size_t i) const {
        return w_[i].dim() > 0 ? GRMeasure{1} : GRMeasure{};
    }
    GRMeasure::value_type length(std::size_t i) const {
        return static_cast<GRMeasure::value_type>(lat_.nodes[i].dim() + w_[i].dim());
    }
    Status status(std::size_t i) {
        if (status_[i] == Status::Unknown) {
            const bool ind = is_indecomposable(generated_module(m_, lat_.nodes[i], w_[i]), caps_);
            status_[i] = ind ? Status::Indecomposable : Status::Decomposable;
        }
        return status_[i];
    }

    const KroneckerModule& m_;
    const Caps& caps_;
    const Lattice& lat_;
    std::vector<Subspace> w_;
    std::vector<Status> status_;
    std::vector<GRMeasure> upper_;
    std::vector<GRMeasure> nu_;
    std::vector<bool> done_;
};

GRMeasure drop_last(const GRMeasure& m) {
    std::vector<GRMeasure::value_type> e(m.elements().begin(), m.elements().end());
    if (!e.empty())
        e.pop_back();
    return GRMeasure(std::move(e));
}

void require_indecomposable_nonsimple(const KroneckerModule& m, const Caps& caps, const char* what) {
    if (m.length() < 2 || !is_indecomposable(m, caps))
        throw PreconditionError(std::string(what) + " needs an indecomposable, non-simple module");
}

std::vector<Subspace> lines_in(const Subspace& w, const Caps& caps) {
    return subspaces_of(w, 1, caps.subspace);
}

} // namespace

GRMeasure gr_measure(const KroneckerModule& m, const Caps& caps) {
    if (m.length() == 0)
        return {};
    return MeasureTable(m, caps).measure();
}

GRMeasure gr_measure_oracle(const KroneckerModule& m, const Caps& caps) {
    if (m.length() > caps.oracle_length)
        throw CapExceeded("oracle cap: length " + std::to_string(m.length()) + " > " +
                          std::to_string(caps.oracle_length));
    std::vector<SubmodulePair> indec;
    for (const auto& s : enumerate_submodules(m, caps)) {
        if (s.length() == 0)
            continue;
        if (is_indecomposable(restrict_to(m, s), caps))
            indec.push_back(s);
    }
    auto strictly_inside = [](const SubmodulePair& a, const SubmodulePair& b) {
        return a.length() < b.length() && contains(b.u1, a.u1) && contains(b.u2, a.u2);
    };
    GRMeasure best;
    std::vector<GRMeasure::value_type> lengths;
    // Every chain, extended one indecomposable submodule at a time.
    std::function<void(std::size_t)> walk = [&](std::size_t last) {
        const GRMeasure here(lengths);
        if (here > best)
            best = here;
        for (std::size_t j = 0; j < indec.size(); ++j) {
            if (!strictly_inside(indec[last], indec[j]))
                continue;
            lengths.push_back(static_cast<GRMeasure::value_type>(indec[j].length()));
            walk(j);
            lengths.pop_back();
        }
    };
    for (std::size_t i = 0; i < indec.size(); ++i) {
        lengths.assign(1, static_cast<GRMeasure::value_type>(indec[i].length()));
        walk(i);
    }
    return best;
}

std::vector<SubmodulePair> gr_submodules(const KroneckerModule& m, const Caps& caps) {
    require_indecomposable_nonsimple(m, caps, "gr_submodules");
    MeasureTable table(m, caps);
    const GRMeasure target = drop_last(table.measure());
    std::vector<SubmodulePair> out;
    for (std::size_t i = 1; i < table.top(); ++i)
        if (table.mu(i) == target)
            out.push_back({table.u(i), table.w(i)});
    if (target == GRMeasure{1}) {
        const Subspace full = Subspace::full(m.q(), m.d2());
        for (const auto& line : lines_in(full, caps))
            out.push_back({Subspace::zero(m.q(), m.d1()), line});
    }
    std::sort(out.begin(), out.end());
    for (const auto& x : out)
        if (!is_indecomposable(quotient(m, x), caps))
            throw std::logic_error("gr_submodules: decomposable factor of a GR inclusion");
    return out;
}

bool is_gr_inclusion(const KroneckerModule& m, const SubmodulePair& x, const Caps& caps) {
    if (!is_submodule(m, x) || x.length() == 0 || x.length() >= m.length())
        return false;
    if (!is_indecomposable(m, caps))
        return false;
    const KroneckerModule sub = restrict_to(m, x);
    if (!is_indecomposable(sub, caps))
        return false;
    return gr_measure(m, caps) ==
           extend(gr_measure(sub, caps), static_cast<GRMeasure::value_type>(m.length()));
}

std::vector<SubmodulePair> witness_chain(const KroneckerModule& m, const Caps& caps) {
    if (m.length() == 0)
        return {};
    MeasureTable table(m, caps);
    const GRMeasure best = table.measure();
    const Subspace zero1 = Subspace::zero(m.q(), m.d1());

    // Largest node first, so the whole module is chosen when it qualifies.
    auto find_node = [&](const GRMeasure& target, std::optional<std::size_t> inside) -> std::optional<std::size_t> {
        for (std::size_t i = table.top(); i > 0; --i) {
            if (inside && (i == *inside || !contains(table.u(*inside), table.u(i))))
                continue;
            if (table.mu(i) == target)
                return i;
        }
        return std::nullopt;
    };

    std::vector<SubmodulePair> chain;
    auto cur = find_node(best, std::nullopt);
    if (!cur) {
        const Subspace full = Subspace::full(m.q(), m.d2());
        chain.push_back({zero1, lines_in(full, caps).front()});
        return chain;
    }
    chain.push_back({table.u(*cur), table.w(*cur)});
    for (;;) {
        const GRMeasure target = drop_last(*table.mu(*cur));
        if (target.empty())
            break;
        const auto next = find_node(target, cur);
        if (!next) {
            if (target != GRMeasure{1})
                throw std::logic_error("witness_chain: broken measure table");
            chain.push_back({zero1, lines_in(table.w(*cur), caps).front()});
            break;
        }
        chain.push_back({table.u(*next), table.w(*next)});
        cur = next;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

std::size_t ModuleSignatureHash::operator()(const ModuleSignature& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : s.words) {
        h ^= w;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ModuleSignature signature(const KroneckerModule& m, const Caps& caps) {
    constexpr std::uint32_t kSkipped = 0xffffffffu;
    ModuleSignature sig;
    auto& w = sig.words;
    const unsigned q = m.q();
    w.push_back(static_cast<std::uint32_t>(m.d1()));
    w.push_back(static_cast<std::uint32_t>(m.d2()));
    if (m.length() == 0)
        return sig;
    w.push_back(static_cast<std::uint32_t>(end_basis(m).size()));

    // Ranks of sum c_i A_i over the points of P^{n-1}(F_q).
    for (const auto& line : enumerate_subspaces(m.n(), q, 1, std::max<std::uint64_t>(caps.subspace, 1 << 16))) {
        FqMatrix comb(q, m.d2(), m.d1());
        for (unsigned i = 0; i < m.n(); ++i) {
            const Fq c = line.basis()(0, i);
            if (c)
                comb = comb + scale(m.map(i), c);
        }
        w.push_back(static_cast<std::uint32_t>(rank(comb)));
    }

    auto histogram = [&](std::size_t d, const std::function<std::size_t(const Subspace&)>& f) {
        std::vector<std::uint32_t> h(std::max(m.d1(), m.d2()) * m.n() + 2, 0);
        try {
            for_each_subspace(
                d, q, 1,
                [&](const Subspace& l) {
                    ++h[f(l)];
                    return true;
                },
                caps.subspace);
        } catch (const CapExceeded&) {
            w.push_back(kSkipped);
            return;
        }
        w.insert(w.end(), h.begin(), h.end());
    };
    // dim of sum_i A_i L for lines L at vertex 1.
    histogram(m.d1(), [&](const Subspace& l) { return forced_floor(m, l).dim(); });
    // Rank of the functional rows (lambda A_i)_i for lines lambda of the dual of vertex 2.
    histogram(m.d2(), [&](const Subspace& l) {
        FqMatrix rows(q, 0, m.d1());
        for (const auto& a : m.maps())
            rows = vstack(rows, l.basis() * a);
        return rank(rows);
    });
    return sig;
}

struct MeasureCache::Impl {
    Caps caps;
    mutable std::mutex mu;
    std::unordered_map<ModuleSignature, std::vector<std::pair<KroneckerModule, GRMeasure>>, ModuleSignatureHash>
        buckets;
    std::size_t entries = 0;
    std::size_t hits = 0;
};

MeasureCache::MeasureCache(Caps caps) : impl_(std::make_unique<Impl>()) { impl_->caps = caps; }
MeasureCache::~MeasureCache() = default;

GRMeasure MeasureCache::measure(const KroneckerModule& m) {
    const Caps& caps = impl_->caps;
    const ModuleSignature sig = signature(m, caps);
    std::vector<std::pair<KroneckerModule, GRMeasure>> bucket;
    {
        std::lock_guard lock(impl_->mu);
        if (auto it = impl_->buckets.find(sig); it != impl_->buckets.end())
            bucket = it->second;
    }
    for (const auto& [rep, mu] : bucket)
        if (is_isomorphic(rep, m, caps)) {
            std::lock_guard lock(impl_->mu);
            ++impl_->hits;
            return mu;
        }
    GRMeasure mu = gr_measure(m, caps);
    std::lock_guard lock(impl_->mu);
    auto& slot = impl_->buckets[sig];
    for (std::size_t i = bucket.size(); i < slot.size(); ++i)
        if (is_isomorphic(slot[i].first, m, caps))
            return mu;
    slot.emplace_back(m, mu);
    ++impl_->entries;
    return mu;
}

std::size_t MeasureCache::size() const {
    std::lock_guard lock(impl_->mu);
    return impl_->entries;
}

std::size_t MeasureCache::hits() const {
    std::lock_guard lock(impl_->mu);
    return impl_->hits;
}

} // namespace grk
