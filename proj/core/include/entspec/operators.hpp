#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entspec/errors.hpp"

namespace entspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense linear algebra is capped; larger instances must go through the
// structured (type-class) representations.
inline constexpr Eigen::Index kDenseDimCap = 4096;

inline constexpr double kHermitianTol = 1e-12;     // relative to max |entry|
inline constexpr double kDensityEigTol = 1e-12;    // eigenvalues >= -tol
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kSpectrumSumTol = 1e-10;
inline constexpr double kSchmidtTrimTol = 1e-14;
inline constexpr double kEigZeroBoundary = 1e-12;  // {A >= 0} boundary, relative to spectral radius

/// Dense self-adjoint operator. Construction validates Hermiticity to
/// kHermitianTol relative to the largest entry magnitude.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }

  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator zero(Eigen::Index dim);

 private:
  Matrix entries_;
};

/// Positive operator of unit trace.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator base);
  explicit DensityOperator(Matrix entries) : DensityOperator(HermitianOperator(std::move(entries))) {}

  Eigen::Index dim() const { return base_.dim(); }
  const Matrix& matrix() const { return base_.matrix(); }
  const HermitianOperator& hermitian() const { return base_; }

  static DensityOperator maximally_mixed(Eigen::Index dim);
  static DensityOperator diagonal(std::span<const double> probabilities);

 private:
  HermitianOperator base_;
};

/// |psi> = sum_ij amplitudes(i,j) |i>|j> on H_A (x) H_B, unit norm.
class PureBipartiteState {
 public:
  PureBipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, Matrix amplitudes);

  Eigen::Index dim_a() const { return amplitudes_.rows(); }
  Eigen::Index dim_b() const { return amplitudes_.cols(); }
  const Matrix& amplitudes() const { return amplitudes_; }

  /// Column vector on the joint space, row-major index i*dim_b + j.
  Vector joint_vector() const;
  DensityOperator joint_density() const;

 private:
  Matrix amplitudes_;
};

/// Descending nonnegative reals summing to 1; the reduced spectrum of a
/// bipartite pure state.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// CPTP map given by Kraus operators, sum_j K_j^dag K_j = I.
class KrausMap {
 public:
  explicit KrausMap(std::vector<Matrix> operators);

  Eigen::Index dim() const { return operators_.front().cols(); }
  std::size_t term_count() const { return operators_.size(); }
  const std::vector<Matrix>& operators() const { return operators_; }

  Matrix apply(const Matrix& rho) const;

 private:
  std::vector<Matrix> operators_;
};

/// LOCC map of the one-way form sum_j (U_j (x) K_j) rho (U_j (x) K_j)^dag
/// with U_j unitary on A and sum_j K_j^dag K_j = I on B.
class LoccMap {
 public:
  struct Term {
    Matrix unitary_a;
    Matrix kraus_b;
  };

  explicit LoccMap(std::vector<Term> terms);

  Eigen::Index dim_a() const { return terms_.front().unitary_a.rows(); }
  Eigen::Index dim_b() const { return terms_.front().kraus_b.cols(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// The joint Kraus map {U_j (x) K_j} on A (x) B.
  KrausMap joint_kraus() const;
  Matrix apply(const Matrix& rho_ab) const;

 private:
  std::vector<Term> terms_;
};

/// Convex mixture of product states, separable on A:B by construction.
/// No separability testing is performed anywhere; membership is declared
/// by how the state is built.
class SeparableState {
 public:
  struct Term {
    double weight;
    Vector factor_a;  // unit vectors
    Vector factor_b;
  };

  SeparableState(Eigen::Index dim_a, Eigen::Index dim_b, std::vector<Term> terms);

  Eigen::Index dim_a() const { return dim_a_; }
  Eigen::Index dim_b() const { return dim_b_; }
  const std::vector<Term>& terms() const { return terms_; }
  const DensityOperator& joint() const { return joint_; }

 private:
  Eigen::Index dim_a_;
  Eigen::Index dim_b_;
  std::vector<Term> terms_;
  DensityOperator joint_;
};

/// Eigen-decomposition sorted descending by eigenvalue.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // descending
  Matrix eigenvectors;          // matching columns, orthonormal
};

SpectralDecomposition spectral_decompose(const HermitianOperator& op);

/// Projector onto the eigenspace of nonnegative eigenvalues, {A >= 0}.
/// The condition is closed: zero eigenvalues belong to the projector, and
/// floating-point ties within kEigZeroBoundary * spectral_radius count as
/// nonnegative.
HermitianOperator positive_spectral_projection(const HermitianOperator& op);

/// {A >= B} = {A - B >= 0}.
HermitianOperator spectral_compare(const HermitianOperator& a, const HermitianOperator& b);

enum class Side { A, B };

/// Reduced state on the kept side (Side::A traces out B).
DensityOperator partial_trace(const PureBipartiteState& state, Side keep);
DensityOperator partial_trace(const DensityOperator& rho_ab, Eigen::Index dim_a, Eigen::Index dim_b, Side keep);

SchmidtSpectrum schmidt_spectrum(const PureBipartiteState& state);

/// -Tr[rho ln rho], in nats. 0 ln 0 = 0.
double von_neumann_entropy(const DensityOperator& rho);
double von_neumann_entropy(const SchmidtSpectrum& spectrum);
double von_neumann_entropy(std::span<const double> probabilities);

/// <target| output |target>, clamped to [0,1] (1e-12 slack).
double overlap_fidelity(const DensityOperator& output, const PureBipartiteState& target);

/// |Psi+_M> = (1/sqrt M) sum_i |i>|i>.
PureBipartiteState maximally_entangled(Eigen::Index m);

}  // namespace entspec
