#include "grk/kronecker.hpp"

#include "grk/errors.hpp"

#include <charconv>
#include <string>

namespace grk {

KroneckerModule simple_module(unsigned n, unsigned q, int vertex) {
    if (vertex == 1)
        return KroneckerModule::zero_maps(n, q, 1, 0);
    if (vertex == 2)
        return KroneckerModule::zero_maps(n, q, 0, 1);
    throw InputError("simple_module: vertex must be 1 or 2");
}

KroneckerModule p_module(unsigned r, unsigned n, unsigned q) {
    if (r < 1)
        throw InputError("p_module: r must be at least 1");
    KroneckerModule prev = simple_module(n, q, 2);
    if (r == 1)
        return prev;
    std::vector<FqMatrix> maps;
    for (unsigned i = 0; i < n; ++i) {
        FqMatrix e(q, n, 1);
        e(i, 0) = 1;
        maps.push_back(std::move(e));
    }
    KroneckerModule cur(n, q, 1, n, std::move(maps));
    for (unsigned k = 3; k <= r; ++k) {
        KroneckerModule next = tau_inverse_module(prev, {});
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

KroneckerModule q_module(unsigned r, unsigned n, unsigned q) {
    KroneckerModule prev = simple_module(n, q, 1);
    if (r == 0)
        return prev;
    std::vector<FqMatrix> maps;
    for (unsigned i = 0; i < n; ++i) {
        FqMatrix e(q, 1, n);
        e(0, i) = 1;
        maps.push_back(std::move(e));
    }
    KroneckerModule cur(n, q, n, 1, std::move(maps));
    for (unsigned k = 2; k <= r; ++k) {
        KroneckerModule next = tau_module(prev, {});
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

KroneckerModule embed2k(const KroneckerModule& m2, unsigned n) {
    if (m2.n() != 2)
        throw InputError("embed2k expects a 2-Kronecker module");
    if (n < 2)
        throw InputError("embed2k: n must be at least 2");
    std::vector<FqMatrix> maps = m2.maps();
    while (maps.size() < n)
        maps.emplace_back(m2.q(), m2.d2(), m2.d1());
    return KroneckerModule(n, m2.q(), m2.d1(), m2.d2(), std::move(maps));
}

KroneckerModule regular2k(unsigned m, unsigned lambda, unsigned q) {
    if (m < 1)
        throw InputError("regular2k: m must be at least 1");
    require_prime(q);
    if (lambda >= q)
        throw InputError("regular2k: lambda must lie in F_q");
    FqMatrix j(q, m, m);
    for (unsigned i = 0; i < m; ++i) {
        j(i, i) = Fq(lambda);
        if (i + 1 < m)
            j(i, i + 1) = 1;
    }
    return KroneckerModule(2, q, m, m, {FqMatrix::identity(q, m), std::move(j)});
}

KroneckerModule regular2k_inf(unsigned m, unsigned q) {
    if (m < 1)
        throw InputError("regular2k_inf: m must be at least 1");
    FqMatrix j(q, m, m);
    for (unsigned i = 0; i + 1 < m; ++i)
        j(i, i + 1) = 1;
    return KroneckerModule(2, q, m, m, {std::move(j), FqMatrix::identity(q, m)});
}

KroneckerModule preproj2k(unsigned m, unsigned q) {
    if (m < 1)
        throw InputError("preproj2k: m must be at least 1");
    FqMatrix f1(q, m + 1, m), f2(q, m + 1, m);
    for (unsigned i = 0; i < m; ++i) {
        f1(i, i) = 1;
        f2(i + 1, i) = 1;
    }
    return KroneckerModule(2, q, m, m + 1, {std::move(f1), std::move(f2)});
}

KroneckerModule preinj2k(unsigned m, unsigned q) {
    if (m < 1)
        throw InputError("preinj2k: m must be at least 1");
    FqMatrix f1(q, m, m + 1), f2(q, m, m + 1);
    for (unsigned i = 0; i < m; ++i) {
        f1(i, i) = 1;
        f2(i, i + 1) = 1;
    }
    return KroneckerModule(2, q, m + 1, m, {std::move(f1), std::move(f2)});
}

namespace {

unsigned parse_param(const std::vector<std::string>& params, std::size_t i, const std::string& kind) {
    if (i >= params.size())
        throw InputError(kind + ": missing parameter " + std::to_string(i + 1));
    const auto& text = params[i];
    unsigned value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw InputError(kind + ": '" + text + "' is not a non-negative integer");
    return value;
}

} // namespace

KroneckerModule construct_family(const std::string& kind, const std::vector<std::string>& params, unsigned n,
                                 unsigned q) {
    require_prime(q);
    if (n < 1)
        throw InputError("n must be at least 1");
    auto expect = [&](std::size_t count) {
        if (params.size() != count)
            throw InputError(kind + " takes " + std::to_string(count) + " parameter(s)");
    };
    if (kind == "simple") {
        expect(1);
        return simple_module(n, q, static_cast<int>(parse_param(params, 0, kind)));
    }
    if (kind == "p") {
        expect(1);
        return p_module(parse_param(params, 0, kind), n, q);
    }
    if (kind == "q") {
        expect(1);
        return q_module(parse_param(params, 0, kind), n, q);
    }
    if (kind == "regular2k") {
        expect(2);
        const unsigned m = parse_param(params, 0, kind);
        if (params[1] == "inf")
            return embed2k(regular2k_inf(m, q), n);
        return embed2k(regular2k(m, parse_param(params, 1, kind), q), n);
    }
    if (kind == "regular2k_inf") {
        expect(1);
        return embed2k(regular2k_inf(parse_param(params, 0, kind), q), n);
    }
    if (kind == "preproj2k") {
        expect(1);
        return embed2k(preproj2k(parse_param(params, 0, kind), q), n);
    }
    if (kind == "preinj2k") {
        expect(1);
        return embed2k(preinj2k(parse_param(params, 0, kind), q), n);
    }
    throw InputError("unknown family kind: " + kind);
}

} // namespace grk
