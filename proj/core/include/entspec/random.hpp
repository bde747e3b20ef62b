#pragma once

#include <cstdint>

#include "entspec/operators.hpp"

namespace entspec {

// Seeded generators for property tests and the lemma suites. Deterministic
// for a fixed seed; dimensions are capped at test scale.
inline constexpr Eigen::Index kRandomDimCap = 64;

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  Complex complex_gaussian();
  std::uint64_t integer(std::uint64_t bound);  // [0, bound)

 private:
  std::uint64_t next_bits();
  std::uint64_t state_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(RandomSource& rng, Eigen::Index dim);

/// Normalized complex-Gaussian amplitudes.
PureBipartiteState random_pure_state(RandomSource& rng, Eigen::Index dim_a, Eigen::Index dim_b);

/// G G^dag normalized to unit trace.
DensityOperator random_density(RandomSource& rng, Eigen::Index dim);

/// Gaussian Hermitian matrix, entries O(1).
HermitianOperator random_hermitian(RandomSource& rng, Eigen::Index dim);

/// Random operator with 0 <= P <= I (unitary conjugation of a uniform diagonal).
HermitianOperator random_contraction(RandomSource& rng, Eigen::Index dim);

/// Stinespring construction: blocks of a Haar unitary on a dilated space.
KrausMap random_kraus_map(RandomSource& rng, Eigen::Index dim, std::size_t term_count = 0);

/// Convex mixture of <= dim_a*dim_b random pure product states.
SeparableState random_separable(RandomSource& rng, Eigen::Index dim_a, Eigen::Index dim_b);

LoccMap random_locc_map(RandomSource& rng, Eigen::Index dim_a, Eigen::Index dim_b,
                        std::size_t term_count = 0);

}  // namespace entspec
