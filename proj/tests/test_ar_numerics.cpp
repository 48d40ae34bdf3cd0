#include "grk/ar_numerics.hpp"

#include <doctest.h>

using namespace grk;

TEST_CASE("Cartan and Coxeter matrices for n = 3") {
    CHECK(cartan(3) == IntMat2{{{{1, 0}, {3, 1}}}});
    CHECK(coxeter(3) == IntMat2{{{{8, 3}, {-3, -1}}}});
    CHECK(coxeter(3) * coxeter_inv(3) == IntMat2::identity());
}

TEST_CASE("Coxeter matrix is -C^{-T} C and has determinant 1") {
    for (unsigned n = 1; n <= 8; ++n) {
        const auto c = cartan(n);
        CHECK(coxeter(n) == -(c.transpose().inverse() * c));
        CHECK(coxeter(n).det() == 1);
        CHECK(coxeter_inv(n) * coxeter(n) == IntMat2::identity());
    }
}

TEST_CASE("preprojective and preinjective dimension vectors") {
    const auto p = preprojective_dims(3, 5);
    CHECK(p[0] == DimVector{0, 1});
    CHECK(p[1] == DimVector{1, 3});
    CHECK(p[2] == DimVector{3, 8});
    CHECK(p[3] == DimVector{8, 21});
    const auto qd = preinjective_dims(3, 3);
    CHECK(qd[0] == DimVector{1, 0});
    CHECK(qd[1] == DimVector{3, 1});
    CHECK(qd[2] == DimVector{8, 3});
    for (unsigned n = 2; n <= 6; ++n) {
        const auto pp = preprojective_dims(n, 8);
        for (std::size_t i = 2; i < pp.size(); ++i) {
            CHECK(tau_dim(pp[i], n) == pp[i - 2]);
            CHECK(tau_inv_dim(pp[i - 2], n) == pp[i]);
            // Real roots: <x, x> = 1.
            CHECK(euler_form(pp[i], pp[i], n) == 1);
        }
    }
}

TEST_CASE("Euler form and classification") {
    CHECK(euler_form({1, 1}, {1, 1}, 3) == -1);
    CHECK(euler_form({0, 1}, {1, 0}, 3) == 0);
    CHECK(euler_form({1, 0}, {0, 1}, 3) == -3);
    CHECK(classify_position({1, 3}, 3) == Position::Preprojective);
    CHECK(classify_position({3, 1}, 3) == Position::Preinjective);
    CHECK(classify_position({1, 1}, 3) == Position::Regular);
    CHECK(classify_position({2, 3}, 3) == Position::Regular);
    CHECK(classify_position({2, 2}, 2) == Position::Regular);
    CHECK(classify_position({2, 3}, 2) == Position::Preprojective);
    CHECK(to_string(DimVector{2, -1}) == "(2,-1)");
}
