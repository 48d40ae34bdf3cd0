#pragma once

// Hand-rolled generators for property tests; failures replay from the seed.

#include "grk/random_modules.hpp"

namespace grk::testgen {

using grk::random_basis_change;
using grk::random_indecomposable;
using grk::random_invertible;
using grk::random_matrix;
using grk::random_measure;
using grk::random_module;
using grk::Rng;
using grk::uniform;

} // namespace grk::testgen
