#include "grk/ar_numerics.hpp"

#include "grk/errors.hpp"

#include <ostream>
#include <sstream>

namespace grk {

std::ostream& operator<<(std::ostream& os, const DimVector& v) {
    return os << '(' << v.x1 << ',' << v.x2 << ')';
}

std::string to_string(const DimVector& v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

IntMat2 operator*(const IntMat2& x, const IntMat2& y) noexcept {
    IntMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.a[i][j] = x.a[i][0] * y.a[0][j] + x.a[i][1] * y.a[1][j];
    return r;
}

IntMat2 operator-(const IntMat2& x) noexcept {
    IntMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.a[i][j] = -x.a[i][j];
    return r;
}

IntMat2 IntMat2::transpose() const noexcept {
    return {{{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}};
}

std::int64_t IntMat2::det() const noexcept { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

IntMat2 IntMat2::inverse() const {
    const auto d = det();
    if (d != 1 && d != -1)
        throw InputError("IntMat2::inverse: matrix is not unimodular");
    // d = +-1, so dividing by d is multiplying by d.
    return {{{{d * a[1][1], -d * a[0][1]}, {-d * a[1][0], d * a[0][0]}}}};
}

DimVector operator*(const DimVector& x, const IntMat2& m) noexcept {
    return {x.x1 * m.a[0][0] + x.x2 * m.a[1][0], x.x1 * m.a[0][1] + x.x2 * m.a[1][1]};
}

IntMat2 cartan(unsigned n) {
    const std::int64_t k = n;
    return {{{{1, 0}, {k, 1}}}};
}

IntMat2 coxeter(unsigned n) {
    const std::int64_t k = n;
    return {{{{k * k - 1, k}, {-k, -1}}}};
}

IntMat2 coxeter_inv(unsigned n) {
    const std::int64_t k = n;
    return {{{{-1, -k}, {k, k * k - 1}}}};
}

std::int64_t euler_form(const DimVector& x, const DimVector& y, unsigned n) noexcept {
    return x.x1 * y.x1 + x.x2 * y.x2 - static_cast<std::int64_t>(n) * x.x1 * y.x2;
}

DimVector tau_dim(const DimVector& x, unsigned n) noexcept { return x * coxeter(n); }

DimVector tau_inv_dim(const DimVector& x, unsigned n) noexcept { return x * coxeter_inv(n); }

std::vector<DimVector> preprojective_dims(unsigned n, unsigned r_max) {
    if (r_max < 1)
        throw InputError("preprojective_dims: r_max must be at least 1");
    std::vector<DimVector> p{{0, 1}, {1, static_cast<std::int64_t>(n)}};
    while (p.size() < r_max)
        p.push_back(tau_inv_dim(p[p.size() - 2], n));
    p.resize(r_max);
    return p;
}

std::vector<DimVector> preinjective_dims(unsigned n, unsigned r_max) {
    std::vector<DimVector> p{{1, 0}, {static_cast<std::int64_t>(n), 1}};
    while (p.size() < r_max + 1)
        p.push_back(tau_dim(p[p.size() - 2], n));
    p.resize(r_max + 1);
    return p;
}

std::string to_string(Position p) {
    switch (p) {
    case Position::Preprojective:
        return "preprojective";
    case Position::Preinjective:
        return "preinjective";
    case Position::Regular:
        return "regular";
    }
    return "?";
}

Position classify_position(const DimVector& x, unsigned n, std::int64_t length_bound) {
    if (n < 2)
        throw InputError("classify_position needs n >= 2");
    if (x.length() > length_bound)
        throw PreconditionError("classify_position: length exceeds the bound");
    // Lengths strictly increase along both sequences for n >= 2.
    DimVector a{0, 1}, b{1, static_cast<std::int64_t>(n)};
    while (a.length() <= length_bound) {
        if (a == x)
            return Position::Preprojective;
        DimVector next = tau_inv_dim(a, n);
        a = b;
        b = next;
    }
    a = {1, 0};
    b = {static_cast<std::int64_t>(n), 1};
    while (a.length() <= length_bound) {
        if (a == x)
            return Position::Preinjective;
        DimVector next = tau_dim(a, n);
        a = b;
        b = next;
    }
    return Position::Regular;
}

Position classify_position(const DimVector& x, unsigned n) {
    return classify_position(x, n, x.length());
}

} // namespace grk
