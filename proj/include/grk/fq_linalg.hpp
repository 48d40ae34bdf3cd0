#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace grk {

using Fq = std::uint8_t;

// Largest supported modulus; entries must fit in Fq.
inline constexpr unsigned kMaxPrime = 251;

bool is_prime(unsigned q) noexcept;
// Throws InputError unless q is a prime <= kMaxPrime.
void require_prime(unsigned q);

// Multiplicative inverse of a nonzero residue mod q (table lookup).
Fq inv_mod(Fq a, unsigned q);

inline Fq add_mod(Fq a, Fq b, unsigned q) noexcept {
    unsigned s = unsigned(a) + b;
    return Fq(s >= q ? s - q : s);
}
inline Fq sub_mod(Fq a, Fq b, unsigned q) noexcept {
    return Fq(a >= b ? a - b : a + q - b);
}
inline Fq mul_mod(Fq a, Fq b, unsigned q) noexcept {
    return Fq((unsigned(a) * b) % q);
}
inline Fq neg_mod(Fq a, unsigned q) noexcept { return Fq(a == 0 ? 0 : q - a); }

// Dense matrix over F_q, row-major.
class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(unsigned q, std::size_t rows, std::size_t cols);
    // Entries are reduced mod q (negative values allowed).
    FqMatrix(unsigned q, std::size_t rows, std::size_t cols, std::span<const long long> entries);

    static FqMatrix zero(unsigned q, std::size_t rows, std::size_t cols) { return {q, rows, cols}; }
    static FqMatrix identity(unsigned q, std::size_t n);
    static FqMatrix from_rows(unsigned q, const std::vector<std::vector<long long>>& rows,
                              std::size_t cols);

    unsigned q() const noexcept { return q_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Fq operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    Fq& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    std::span<const Fq> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<Fq> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Fq> data() const noexcept { return data_; }

    bool is_zero() const noexcept;
    FqMatrix transpose() const;
    // Rows [r0, r0+n) / columns [c0, c0+n) as a new matrix.
    FqMatrix row_block(std::size_t r0, std::size_t n) const;
    FqMatrix col_block(std::size_t c0, std::size_t n) const;

    friend bool operator==(const FqMatrix&, const FqMatrix&) = default;
    friend auto operator<=>(const FqMatrix&, const FqMatrix&) = default;

private:
    unsigned q_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fq> data_;
};

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);
FqMatrix operator+(const FqMatrix& a, const FqMatrix& b);
FqMatrix operator-(const FqMatrix& a, const FqMatrix& b);
FqMatrix scale(const FqMatrix& a, Fq c);
// [a b] and [a; b]
FqMatrix hstack(const FqMatrix& a, const FqMatrix& b);
FqMatrix vstack(const FqMatrix& a, const FqMatrix& b);
// Block diagonal diag(a, b).
FqMatrix block_diag(const FqMatrix& a, const FqMatrix& b);
// A * v for a column vector v.
std::vector<Fq> apply(const FqMatrix& a, std::span<const Fq> v);

struct RrefResult {
    FqMatrix matrix;                 // reduced row echelon form, same shape
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

RrefResult rref_with_pivots(FqMatrix a);
FqMatrix rref(const FqMatrix& a);
std::size_t rank(const FqMatrix& a);
bool is_invertible(const FqMatrix& a);
std::optional<FqMatrix> inverse(const FqMatrix& a);

class Subspace;

// {x : A x = 0} as a subspace of F_q^cols.
Subspace kernel_basis(const FqMatrix& a);
// Column space of A as a subspace of F_q^rows.
Subspace image_basis(const FqMatrix& a);
// Some x with A x = b, if one exists.
std::optional<std::vector<Fq>> solve(const FqMatrix& a, std::span<const Fq> b);

// A subspace of F_q^d in canonical form: the rows of `basis` are the nonzero
// rows of its reduced row echelon form. Two subspaces are equal iff their
// canonical bases are equal, so the type is usable as an ordered/hashed key.
class Subspace {
public:
    Subspace() = default;
    static Subspace zero(unsigned q, std::size_t ambient);
    static Subspace full(unsigned q, std::size_t ambient);
    // Span of the rows of `gens`.
    static Subspace span(const FqMatrix& gens);
    // Caller guarantees `rref_rows` is already in canonical form.
    static Subspace from_canonical(FqMatrix rref_rows, std::vector<std::size_t> pivots);

    unsigned q() const noexcept { return basis_.q(); }
    std::size_t ambient() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const FqMatrix& basis() const noexcept { return basis_; }
    std::span<const std::size_t> pivots() const noexcept { return pivots_; }
    // Ascending coordinates that are not pivots; their unit vectors span a
    // complement.
    std::vector<std::size_t> non_pivots() const;

    bool contains_vector(std::span<const Fq> v) const;
    // v minus the unique element of U that agrees with v on the pivots.
    std::vector<Fq> reduce(std::span<const Fq> v) const;
    // Coordinates of v (assumed in U) with respect to the canonical basis.
    std::vector<Fq> coordinates(std::span<const Fq> v) const;
    // Coordinates of the class of v in F^d / U with respect to the non-pivot
    // unit vectors.
    std::vector<Fq> quotient_coordinates(std::span<const Fq> v) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
    friend auto operator<=>(const Subspace& a, const Subspace& b) {
        if (auto c = a.dim() <=> b.dim(); c != 0)
            return c;
        if (auto c = a.pivots_ <=> b.pivots_; c != 0)
            return c;
        return a.basis_ <=> b.basis_;
    }
    std::size_t hash() const noexcept;

private:
    FqMatrix basis_;
    std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
    std::size_t operator()(const Subspace& s) const noexcept { return s.hash(); }
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersection(const Subspace& u, const Subspace& v);
// V is a subspace of U.
bool contains(const Subspace& u, const Subspace& v);
// Image A*U (A maps F^cols -> F^rows, acting on column vectors).
Subspace apply(const FqMatrix& a, const Subspace& u);

// Number of subspaces of F_q^d of dimension k, and of all dimensions.
unsigned long long gaussian_binomial(unsigned d, unsigned k, unsigned q);
unsigned long long galois_number(unsigned d, unsigned q);

// Default enumeration bound: q^d must not exceed this.
inline constexpr unsigned long long kDefaultSubspaceCap = 1024;

// Visits every subspace of F_q^d exactly once: by dimension ascending, then
// lexicographically by pivot set, then by free entries. If `only_dim` is set,
// only subspaces of that dimension are visited. The visitor returns false to
// stop early. Throws CapExceeded if q^d > cap.
void for_each_subspace(std::size_t d, unsigned q, std::optional<std::size_t> only_dim,
                       const std::function<bool(const Subspace&)>& visit,
                       unsigned long long cap = kDefaultSubspaceCap);

std::vector<Subspace> enumerate_subspaces(std::size_t d, unsigned q,
                                          std::optional<std::size_t> only_dim = std::nullopt,
                                          unsigned long long cap = kDefaultSubspaceCap);

// Subspaces of U (given in ambient coordinates) of dimension k, via the
// canonical enumeration of F_q^{dim U} pushed through U's basis.
std::vector<Subspace> subspaces_of(const Subspace& u, std::size_t k,
                                   unsigned long long cap = kDefaultSubspaceCap);

} // namespace grk
