#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "ampcoh/state_core.hpp"

namespace ampcoh {

using Rng = std::mt19937_64;

/// Stream seed for item `index` of a run seeded with `seed`, so results do
/// not depend on how work is split across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-random pure state (normalized complex Gaussian vector).
PureState random_pure_state(std::size_t n, Rng& rng);

/// Vector whose moduli lie in [min_modulus, 1] before normalization, with
/// uniformly random phases; every component stays bounded away from zero.
PureState random_nonzero_state(std::size_t n, Rng& rng, double min_modulus = 0.2);

/// A A^dagger / tr(A A^dagger) with A an n x rank complex Gaussian matrix.
DensityMatrix random_density_matrix(std::size_t n, std::size_t rank, Rng& rng);

/// Diagonal distribution plus off-diagonal perturbations of relative size
/// `epsilon`, mixed with the diagonal until positive semidefinite.
DensityMatrix random_near_diagonal(std::size_t n, double epsilon, Rng& rng);

/// Random subset with 1 <= M <= max(1, N/2).
MarkedSet random_marked_set(std::size_t n, Rng& rng);

}  // namespace ampcoh
