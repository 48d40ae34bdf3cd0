#include "grk/fq_linalg.hpp"

#include "grk/errors.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace grk {

namespace {

using InverseTables = std::array<std::array<Fq, kMaxPrime + 1>, kMaxPrime + 1>;

const InverseTables& inverse_tables() {
    static const InverseTables tables = [] {
        InverseTables t{};
        for (unsigned q = 2; q <= kMaxPrime; ++q) {
            if (!is_prime(q))
                continue;
            for (unsigned a = 1; a < q; ++a)
                for (unsigned b = 1; b < q; ++b)
                    if ((a * b) % q == 1) {
                        t[q][a] = Fq(b);
                        break;
                    }
        }
        return t;
    }();
    return tables;
}

void require_same_q(const FqMatrix& a, const FqMatrix& b, const char* what) {
    if (a.q() != b.q())
        throw InputError(std::string(what) + ": modulus mismatch");
}

// row[dst] -= f * row[src], over columns [from, cols).
void row_axpy(FqMatrix& m, std::size_t dst, std::size_t src, Fq f, std::size_t from) {
    const unsigned q = m.q();
    const Fq nf = neg_mod(f, q);
    auto d = m.row(dst);
    auto s = m.row(src);
    for (std::size_t c = from; c < d.size(); ++c)
        if (s[c] != 0)
            d[c] = Fq((d[c] + unsigned(nf) * s[c]) % q);
}

} // namespace

bool is_prime(unsigned q) noexcept {
    if (q < 2)
        return false;
    for (unsigned p = 2; p * p <= q; ++p)
        if (q % p == 0)
            return false;
    return true;
}

void require_prime(unsigned q) {
    if (!is_prime(q) || q > kMaxPrime)
        throw InputError("q must be a prime <= " + std::to_string(kMaxPrime) + ", got " +
                         std::to_string(q));
}

Fq inv_mod(Fq a, unsigned q) {
    if (a == 0)
        throw InputError("inverse of zero");
    return inverse_tables()[q][a];
}

// ---------------------------------------------------------------- FqMatrix

FqMatrix::FqMatrix(unsigned q, std::size_t rows, std::size_t cols)
    : q_(q), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    require_prime(q);
}

FqMatrix::FqMatrix(unsigned q, std::size_t rows, std::size_t cols, std::span<const long long> entries)
    : FqMatrix(q, rows, cols) {
    if (entries.size() != rows * cols)
        throw InputError("matrix entry count does not match its shape");
    for (std::size_t k = 0; k < entries.size(); ++k) {
        long long x = entries[k] % static_cast<long long>(q);
        if (x < 0)
            x += q;
        data_[k] = Fq(x);
    }
}

FqMatrix FqMatrix::identity(unsigned q, std::size_t n) {
    FqMatrix m(q, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

FqMatrix FqMatrix::from_rows(unsigned q, const std::vector<std::vector<long long>>& rows,
                             std::size_t cols) {
    std::vector<long long> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols)
            throw InputError("ragged matrix rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return FqMatrix(q, rows.size(), cols, flat);
}

bool FqMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Fq x) { return x == 0; });
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix t(q_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

FqMatrix FqMatrix::row_block(std::size_t r0, std::size_t n) const {
    FqMatrix out(q_, n, cols_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r0 * cols_), n * cols_, out.data_.begin());
    return out;
}

FqMatrix FqMatrix::col_block(std::size_t c0, std::size_t n) const {
    FqMatrix out(q_, rows_, n);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, c) = (*this)(r, c0 + c);
    return out;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
    require_same_q(a, b, "multiply");
    if (a.cols() != b.rows())
        throw InputError("multiply: shape mismatch");
    const unsigned q = a.q();
    FqMatrix out(q, a.rows(), b.cols());
    std::vector<unsigned> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::fill(acc.begin(), acc.end(), 0u);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const unsigned x = a(i, k);
            if (x == 0)
                continue;
            auto br = b.row(k);
            for (std::size_t j = 0; j < br.size(); ++j)
                acc[j] += x * br[j];
            // Keep the accumulator bounded: q <= 251 so 251*250*k overflows
            // only after ~68000 terms; reduce occasionally to be safe.
            if ((k & 1023) == 1023)
                for (auto& v : acc)
                    v %= q;
        }
        for (std::size_t j = 0; j < acc.size(); ++j)
            out(i, j) = Fq(acc[j] % q);
    }
    return out;
}

FqMatrix operator+(const FqMatrix& a, const FqMatrix& b) {
    require_same_q(a, b, "add");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("add: shape mismatch");
    FqMatrix out(a.q(), a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = add_mod(a(r, c), b(r, c), a.q());
    return out;
}

FqMatrix operator-(const FqMatrix& a, const FqMatrix& b) {
    require_same_q(a, b, "subtract");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InputError("subtract: shape mismatch");
    FqMatrix out(a.q(), a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = sub_mod(a(r, c), b(r, c), a.q());
    return out;
}

FqMatrix scale(const FqMatrix& a, Fq c) {
    FqMatrix out(a.q(), a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k)
            out(r, k) = mul_mod(a(r, k), c, a.q());
    return out;
}

FqMatrix hstack(const FqMatrix& a, const FqMatrix& b) {
    require_same_q(a, b, "hstack");
    if (a.rows() != b.rows())
        throw InputError("hstack: row count mismatch");
    FqMatrix out(a.q(), a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c)
            out(r, a.cols() + c) = b(r, c);
    }
    return out;
}

FqMatrix vstack(const FqMatrix& a, const FqMatrix& b) {
    require_same_q(a, b, "vstack");
    if (a.cols() != b.cols())
        throw InputError("vstack: column count mismatch");
    FqMatrix out(a.q(), a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            out(a.rows() + r, c) = b(r, c);
    return out;
}

FqMatrix block_diag(const FqMatrix& a, const FqMatrix& b) {
    require_same_q(a, b, "block_diag");
    FqMatrix out(a.q(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            out(a.rows() + r, a.cols() + c) = b(r, c);
    return out;
}

std::vector<Fq> apply(const FqMatrix& a, std::span<const Fq> v) {
    if (v.size() != a.cols())
        throw InputError("apply: vector length mismatch");
    const unsigned q = a.q();
    std::vector<Fq> out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        unsigned s = 0;
        auto row = a.row(r);
        for (std::size_t c = 0; c < row.size(); ++c)
            s += unsigned(row[c]) * v[c];
        out[r] = Fq(s % q);
    }
    return out;
}

// ---------------------------------------------------------------- elimination

RrefResult rref_with_pivots(FqMatrix m) {
    const unsigned q = m.q();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r) {
            auto a = m.row(p);
            auto b = m.row(r);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        const Fq inv = inv_mod(m(r, c), q);
        if (inv != 1)
            for (auto& x : m.row(r))
                x = mul_mod(x, inv, q);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m(i, c) != 0)
                row_axpy(m, i, r, m(i, c), c);
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

FqMatrix rref(const FqMatrix& a) { return rref_with_pivots(a).matrix; }

std::size_t rank(const FqMatrix& a) { return rref_with_pivots(a).pivots.size(); }

bool is_invertible(const FqMatrix& a) {
    return a.rows() == a.cols() && rank(a) == a.rows();
}

std::optional<FqMatrix> inverse(const FqMatrix& a) {
    if (a.rows() != a.cols())
        throw InputError("inverse: matrix is not square");
    const std::size_t n = a.rows();
    auto red = rref_with_pivots(hstack(a, FqMatrix::identity(a.q(), n)));
    if (red.pivots.size() < n || (n > 0 && red.pivots[n - 1] != n - 1))
        return std::nullopt;
    return red.matrix.col_block(n, n);
}

Subspace kernel_basis(const FqMatrix& a) {
    const unsigned q = a.q();
    auto [m, pivots] = rref_with_pivots(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    FqMatrix gens(q, free_cols.size(), n);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t f = free_cols[k];
        gens(k, f) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            gens(k, pivots[i]) = neg_mod(m(i, f), q);
    }
    return Subspace::span(gens);
}

Subspace image_basis(const FqMatrix& a) { return Subspace::span(a.transpose()); }

std::optional<std::vector<Fq>> solve(const FqMatrix& a, std::span<const Fq> b) {
    if (b.size() != a.rows())
        throw InputError("solve: right-hand side length mismatch");
    FqMatrix col(a.q(), a.rows(), 1);
    for (std::size_t r = 0; r < a.rows(); ++r)
        col(r, 0) = Fq(b[r] % a.q());
    auto [m, pivots] = rref_with_pivots(hstack(a, col));
    const std::size_t n = a.cols();
    if (!pivots.empty() && pivots.back() == n)
        return std::nullopt;
    std::vector<Fq> x(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = m(i, n);
    return x;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::zero(unsigned q, std::size_t ambient) {
    Subspace s;
    s.basis_ = FqMatrix(q, 0, ambient);
    return s;
}

Subspace Subspace::full(unsigned q, std::size_t ambient) {
    Subspace s;
    s.basis_ = FqMatrix::identity(q, ambient);
    s.pivots_.resize(ambient);
    for (std::size_t k = 0; k < ambient; ++k)
        s.pivots_[k] = k;
    return s;
}

Subspace Subspace::span(const FqMatrix& gens) {
    auto [m, pivots] = rref_with_pivots(gens);
    Subspace s;
    s.basis_ = m.row_block(0, pivots.size());
    s.pivots_ = std::move(pivots);
    return s;
}

Subspace Subspace::from_canonical(FqMatrix rref_rows, std::vector<std::size_t> pivots) {
    Subspace s;
    s.basis_ = std::move(rref_rows);
    s.pivots_ = std::move(pivots);
    return s;
}

std::vector<std::size_t> Subspace::non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t c = 0; c < ambient(); ++c) {
        if (k < pivots_.size() && pivots_[k] == c) {
            ++k;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

std::vector<Fq> Subspace::reduce(std::span<const Fq> v) const {
    if (v.size() != ambient())
        throw InputError("subspace: vector length mismatch");
    const unsigned q = this->q();
    std::vector<Fq> r(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Fq f = r[pivots_[i]];
        if (f == 0)
            continue;
        const Fq nf = neg_mod(f, q);
        auto b = basis_.row(i);
        for (std::size_t c = pivots_[i]; c < r.size(); ++c)
            if (b[c] != 0)
                r[c] = Fq((r[c] + unsigned(nf) * b[c]) % q);
    }
    return r;
}

bool Subspace::contains_vector(std::span<const Fq> v) const {
    auto r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](Fq x) { return x == 0; });
}

std::vector<Fq> Subspace::coordinates(std::span<const Fq> v) const {
    std::vector<Fq> out(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        out[i] = v[pivots_[i]];
    return out;
}

std::vector<Fq> Subspace::quotient_coordinates(std::span<const Fq> v) const {
    auto r = reduce(v);
    std::vector<Fq> out;
    out.reserve(ambient() - dim());
    for (auto c : non_pivots())
        out.push_back(r[c]);
    return out;
}

std::size_t Subspace::hash() const noexcept {
    std::size_t h = 1469598103934665603ull ^ (basis_.cols() * 131 + basis_.rows());
    for (Fq x : basis_.data())
        h = (h ^ x) * 1099511628211ull;
    return h;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.q() != v.q())
        throw InputError("subspace_sum: ambient mismatch");
    return Subspace::span(vstack(u.basis(), v.basis()));
}

Subspace subspace_intersection(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.q() != v.q())
        throw InputError("subspace_intersection: ambient mismatch");
    if (u.dim() == 0 || v.dim() == 0)
        return Subspace::zero(u.q(), u.ambient());
    // (a, b) with aU + bV = 0 gives aU in the intersection.
    const FqMatrix stacked = vstack(u.basis(), v.basis());
    const Subspace rel = kernel_basis(stacked.transpose());
    const FqMatrix coeffs = rel.basis().col_block(0, u.dim());
    return Subspace::span(coeffs * u.basis());
}

bool contains(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient() || u.q() != v.q())
        throw InputError("contains: ambient mismatch");
    if (v.dim() > u.dim())
        return false;
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (!u.contains_vector(v.basis().row(i)))
            return false;
    return true;
}

Subspace apply(const FqMatrix& a, const Subspace& u) {
    if (a.cols() != u.ambient() || a.q() != u.q())
        throw InputError("apply: map does not act on this subspace");
    // Rows of B A^T are the images of the basis rows.
    return Subspace::span(u.basis() * a.transpose());
}

// ---------------------------------------------------------------- enumeration

unsigned long long gaussian_binomial(unsigned d, unsigned k, unsigned q) {
    if (k > d)
        return 0;
    unsigned long long num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        unsigned long long a = 1, b = 1;
        for (unsigned e = 0; e < d - i; ++e)
            a *= q;
        for (unsigned e = 0; e < i + 1; ++e)
            b *= q;
        num *= a - 1;
        den *= b - 1;
    }
    return num / den;
}

unsigned long long galois_number(unsigned d, unsigned q) {
    unsigned long long s = 0;
    for (unsigned k = 0; k <= d; ++k)
        s += gaussian_binomial(d, k, q);
    return s;
}

namespace {

void check_cap(std::size_t d, unsigned q, unsigned long long cap) {
    unsigned long long size = 1;
    for (std::size_t k = 0; k < d; ++k) {
        size *= q;
        if (size > cap)
            throw CapExceeded("subspace enumeration of F_" + std::to_string(q) + "^" +
                              std::to_string(d) + " exceeds the cap of " + std::to_string(cap));
    }
}

// Returns false if the visitor asked to stop.
bool visit_dim(std::size_t d, unsigned q, std::size_t k,
               const std::function<bool(const Subspace&)>& visit) {
    if (k == 0)
        return visit(Subspace::zero(q, d));
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i)
        piv[i] = i;
    while (true) {
        // Free slots: (row i, column c) with c > piv[i] and c not a pivot.
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t next = 0;
            for (std::size_t c = piv[i] + 1; c < d; ++c) {
                while (next < k && piv[next] < c)
                    ++next;
                if (next < k && piv[next] == c)
                    continue;
                slots.emplace_back(i, c);
            }
        }
        FqMatrix m(q, k, d);
        for (std::size_t i = 0; i < k; ++i)
            m(i, piv[i]) = 1;
        std::vector<Fq> digits(slots.size(), 0);
        bool done = false;
        while (!done) {
            for (std::size_t s = 0; s < slots.size(); ++s)
                m(slots[s].first, slots[s].second) = digits[s];
            if (!visit(Subspace::from_canonical(m, piv)))
                return false;
            // Odometer increment, last slot fastest.
            done = true;
            for (std::size_t s = slots.size(); s-- > 0;) {
                if (++digits[s] < q) {
                    done = false;
                    break;
                }
                digits[s] = 0;
            }
        }
        // Next k-combination of pivot columns in lexicographic order.
        std::size_t i = k;
        while (i > 0 && piv[i - 1] == d - k + (i - 1))
            --i;
        if (i == 0)
            break;
        ++piv[i - 1];
        for (std::size_t j = i; j < k; ++j)
            piv[j] = piv[j - 1] + 1;
    }
    return true;
}

} // namespace

void for_each_subspace(std::size_t d, unsigned q, std::optional<std::size_t> only_dim,
                       const std::function<bool(const Subspace&)>& visit,
                       unsigned long long cap) {
    require_prime(q);
    check_cap(d, q, cap);
    for (std::size_t k = 0; k <= d; ++k) {
        if (only_dim && *only_dim != k)
            continue;
        if (!visit_dim(d, q, k, visit))
            return;
    }
}

std::vector<Subspace> enumerate_subspaces(std::size_t d, unsigned q,
                                          std::optional<std::size_t> only_dim,
                                          unsigned long long cap) {
    std::vector<Subspace> out;
    for_each_subspace(d, q, only_dim, [&](const Subspace& s) {
        out.push_back(s);
        return true;
    }, cap);
    return out;
}

std::vector<Subspace> subspaces_of(const Subspace& u, std::size_t k, unsigned long long cap) {
    std::vector<Subspace> out;
    for_each_subspace(u.dim(), u.q(), k, [&](const Subspace& s) {
        out.push_back(Subspace::span(s.basis() * u.basis()));
        return true;
    }, cap);
    return out;
}

} // namespace grk
