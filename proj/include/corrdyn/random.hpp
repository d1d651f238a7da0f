#pragma once

#include <cstddef>
#include <random>

#include "corrdyn/densemat.hpp"

namespace corrdyn {

/// Seeded generator passed explicitly to every sampling routine.
using Rng = std::mt19937_64;

/// Matrix of independent standard complex Gaussian entries.
ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// G G^H / tr(G G^H) with G square Ginibre: full rank almost surely.
DensityOperator random_density(std::size_t dim, Rng& rng);

DensityOperator random_pure_state(std::size_t dim, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
UnitaryOperator random_unitary(std::size_t dim, Rng& rng);

/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

}  // namespace corrdyn
