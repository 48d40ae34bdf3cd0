#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace grk {

// Dimension vector (x1, x2) of a Kronecker module, used as a row vector.
// Intermediate values under the Coxeter transformation may be negative.
struct DimVector {
    std::int64_t x1 = 0;
    std::int64_t x2 = 0;

    std::int64_t length() const noexcept { return x1 + x2; }

    friend bool operator==(const DimVector&, const DimVector&) = default;
    friend auto operator<=>(const DimVector&, const DimVector&) = default;
    friend DimVector operator+(DimVector a, DimVector b) noexcept { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend DimVector operator*(std::int64_t k, DimVector a) noexcept { return {k * a.x1, k * a.x2}; }
};

std::ostream& operator<<(std::ostream& os, const DimVector& v);
std::string to_string(const DimVector& v);

// Exact 2x2 integer matrix.
struct IntMat2 {
    std::array<std::array<std::int64_t, 2>, 2> a{};

    friend bool operator==(const IntMat2&, const IntMat2&) = default;
    friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) noexcept;
    friend IntMat2 operator-(const IntMat2& x) noexcept;

    IntMat2 transpose() const noexcept;
    std::int64_t det() const noexcept;
    // Exact inverse; throws unless det is +1 or -1.
    IntMat2 inverse() const;
    static IntMat2 identity() noexcept { return {{{{1, 0}, {0, 1}}}}; }
};

// Row vector times matrix.
DimVector operator*(const DimVector& x, const IntMat2& m) noexcept;

IntMat2 cartan(unsigned n);
IntMat2 coxeter(unsigned n);
IntMat2 coxeter_inv(unsigned n);

// <x, y> = x1 y1 + x2 y2 - n x1 y2
std::int64_t euler_form(const DimVector& x, const DimVector& y, unsigned n) noexcept;

DimVector tau_dim(const DimVector& x, unsigned n) noexcept;
DimVector tau_inv_dim(const DimVector& x, unsigned n) noexcept;

// P_1 .. P_rmax (index 0 holds P_1).
std::vector<DimVector> preprojective_dims(unsigned n, unsigned r_max);
// Q_0 .. Q_rmax (index 0 holds Q_0).
std::vector<DimVector> preinjective_dims(unsigned n, unsigned r_max);

enum class Position { Preprojective, Preinjective, Regular };

std::string to_string(Position p);

// Exact membership test against the generated P/Q dimension lists. Requires
// n >= 2 (the lists are then strictly increasing in length).
Position classify_position(const DimVector& x, unsigned n, std::int64_t length_bound);
Position classify_position(const DimVector& x, unsigned n);

} // namespace grk
