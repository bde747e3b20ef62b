#include "entspec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entspec {

namespace {

void check_dense_cap(Eigen::Index dim) {
  if (dim > kDenseDimCap) {
    throw ResourceCapError("dense operator dimension " + std::to_string(dim) +
                           " exceeds cap " + std::to_string(kDenseDimCap) +
                           "; use structured representations");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw ValidationError("HermitianOperator: matrix must be square and nonempty");
  }
  check_dense_cap(entries_.rows());
  const double scale = std::max(entries_.cwiseAbs().maxCoeff(), 1.0);
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol * scale) {
    throw ValidationError("HermitianOperator: matrix is not self-adjoint (relative deviation " +
                          std::to_string(asym / scale) + ")");
  }
  // symmetrize away the tolerated rounding noise
  entries_ = ((entries_ + entries_.adjoint()) / 2.0).eval();
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(Matrix::Zero(dim, dim));
}

DensityOperator::DensityOperator(HermitianOperator base) : base_(std::move(base)) {
  const double trace = base_.matrix().trace().real();
  if (std::abs(trace - 1.0) > kTraceTol * std::max(1.0, std::abs(trace))) {
    throw ValidationError("DensityOperator: trace is " + std::to_string(trace) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(base_.matrix(), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kDensityEigTol) {
    throw ValidationError("DensityOperator: negative eigenvalue " +
                          std::to_string(solver.eigenvalues().minCoeff()));
  }
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index dim) {
  return DensityOperator(Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityOperator DensityOperator::diagonal(std::span<const double> probabilities) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(probabilities.size()),
                          static_cast<Eigen::Index>(probabilities.size()));
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probabilities[i];
  }
  return DensityOperator(std::move(m));
}

PureBipartiteState::PureBipartiteState(Eigen::Index dim_a, Eigen::Index dim_b, Matrix amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (dim_a < 1 || dim_b < 1) {
    throw ValidationError("PureBipartiteState: dimensions must be positive");
  }
  check_dense_cap(dim_a);
  check_dense_cap(dim_b);
  if (amplitudes_.rows() != dim_a || amplitudes_.cols() != dim_b) {
    throw ValidationError("PureBipartiteState: amplitude matrix shape mismatch");
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw ValidationError("PureBipartiteState: squared norm is " + std::to_string(norm2));
  }
}

Vector PureBipartiteState::joint_vector() const {
  Vector v(dim_a() * dim_b());
  for (Eigen::Index i = 0; i < dim_a(); ++i) {
    for (Eigen::Index j = 0; j < dim_b(); ++j) {
      v(i * dim_b() + j) = amplitudes_(i, j);
    }
  }
  return v;
}

DensityOperator PureBipartiteState::joint_density() const {
  check_dense_cap(dim_a() * dim_b());
  const Vector v = joint_vector();
  Matrix rho = v * v.adjoint();
  // project out rounding so the unit-trace check cannot trip on |v|^2 = 1 +- tol
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho));
}

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw ValidationError("SchmidtSpectrum: empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < -kDensityEigTol) {
      throw ValidationError("SchmidtSpectrum: negative value");
    }
    if (i > 0 && values_[i] > values_[i - 1] + kSpectrumSumTol) {
      throw ValidationError("SchmidtSpectrum: values must be nonincreasing");
    }
    sum += values_[i];
  }
  if (std::abs(sum - 1.0) > kSpectrumSumTol) {
    throw ValidationError("SchmidtSpectrum: sum is " + std::to_string(sum) + ", expected 1");
  }
}

KrausMap::KrausMap(std::vector<Matrix> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) {
    throw ValidationError("KrausMap: no operators");
  }
  const Eigen::Index d = operators_.front().cols();
  Matrix completeness = Matrix::Zero(d, d);
  for (const auto& k : operators_) {
    if (k.cols() != d) {
      throw ValidationError("KrausMap: inconsistent operator dimensions");
    }
    completeness += k.adjoint() * k;
  }
  const double dev = (completeness - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol) {
    throw ValidationError("KrausMap: sum K^dag K deviates from identity by " + std::to_string(dev));
  }
}

Matrix KrausMap::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(operators_.front().rows(), operators_.front().rows());
  for (const auto& k : operators_) {
    out += k * rho * k.adjoint();
  }
  return out;
}

LoccMap::LoccMap(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw ValidationError("LoccMap: no terms");
  }
  const Eigen::Index da = terms_.front().unitary_a.rows();
  const Eigen::Index db = terms_.front().kraus_b.cols();
  Matrix completeness = Matrix::Zero(db, db);
  for (const auto& t : terms_) {
    if (t.unitary_a.rows() != da || t.unitary_a.cols() != da || t.kraus_b.cols() != db) {
      throw ValidationError("LoccMap: inconsistent term dimensions");
    }
    const double udev =
        (t.unitary_a.adjoint() * t.unitary_a - Matrix::Identity(da, da)).cwiseAbs().maxCoeff();
    if (udev > kUnitaryTol) {
      throw ValidationError("LoccMap: A-side operator is not unitary (deviation " +
                            std::to_string(udev) + ")");
    }
    completeness += t.kraus_b.adjoint() * t.kraus_b;
  }
  const double dev = (completeness - Matrix::Identity(db, db)).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol) {
    throw ValidationError("LoccMap: B-side Kraus completeness deviates by " + std::to_string(dev));
  }
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

KrausMap LoccMap::joint_kraus() const {
  std::vector<Matrix> ops;
  ops.reserve(terms_.size());
  for (const auto& t : terms_) {
    ops.push_back(kron(t.unitary_a, t.kraus_b));
  }
  return KrausMap(std::move(ops));
}

Matrix LoccMap::apply(const Matrix& rho_ab) const {
  return joint_kraus().apply(rho_ab);
}

SeparableState::SeparableState(Eigen::Index dim_a, Eigen::Index dim_b, std::vector<Term> terms)
    : dim_a_(dim_a),
      dim_b_(dim_b),
      terms_(std::move(terms)),
      joint_([&] {
        if (terms_.empty()) {
          throw ValidationError("SeparableState: no terms");
        }
        double weight_sum = 0.0;
        Matrix rho = Matrix::Zero(dim_a * dim_b, dim_a * dim_b);
        for (auto& t : terms_) {
          if (t.weight < 0) {
            throw ValidationError("SeparableState: negative weight");
          }
          if (t.factor_a.size() != dim_a || t.factor_b.size() != dim_b) {
            throw ValidationError("SeparableState: factor dimension mismatch");
          }
          t.factor_a.normalize();
          t.factor_b.normalize();
          weight_sum += t.weight;
          Vector prod(dim_a * dim_b);
          for (Eigen::Index i = 0; i < dim_a; ++i) {
            for (Eigen::Index j = 0; j < dim_b; ++j) {
              prod(i * dim_b + j) = t.factor_a(i) * t.factor_b(j);
            }
          }
          rho += t.weight * (prod * prod.adjoint());
        }
        if (weight_sum <= 0) {
          throw ValidationError("SeparableState: weights sum to zero");
        }
        for (auto& t : terms_) {
          t.weight /= weight_sum;
        }
        rho /= weight_sum;
        return DensityOperator(std::move(rho));
      }()) {}

SpectralDecomposition spectral_decompose(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) {
    throw ValidationError("spectral_decompose: eigensolver failed");
  }
  const Eigen::Index d = op.dim();
  SpectralDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  // Eigen returns ascending order
  for (Eigen::Index i = 0; i < d; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

HermitianOperator positive_spectral_projection(const HermitianOperator& op) {
  const SpectralDecomposition eig = spectral_decompose(op);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  const double boundary = -kEigZeroBoundary * scale;
  Matrix proj = Matrix::Zero(op.dim(), op.dim());
  for (Eigen::Index i = 0; i < op.dim(); ++i) {
    if (eig.eigenvalues(i) >= boundary) {
      proj += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    }
  }
  return HermitianOperator(std::move(proj));
}

HermitianOperator spectral_compare(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("spectral_compare: dimension mismatch");
  }
  return positive_spectral_projection(HermitianOperator(a.matrix() - b.matrix()));
}

DensityOperator partial_trace(const PureBipartiteState& state, Side keep) {
  const Matrix& c = state.amplitudes();
  Matrix reduced = (keep == Side::A) ? Matrix(c * c.adjoint()) : Matrix(c.transpose() * c.conjugate());
  reduced /= reduced.trace().real();
  return DensityOperator(std::move(reduced));
}

DensityOperator partial_trace(const DensityOperator& rho_ab, Eigen::Index dim_a, Eigen::Index dim_b,
                              Side keep) {
  if (dim_a * dim_b != rho_ab.dim()) {
    throw ValidationError("partial_trace: dim_a * dim_b != joint dimension");
  }
  const Matrix& r = rho_ab.matrix();
  if (keep == Side::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i) {
      for (Eigen::Index k = 0; k < dim_a; ++k) {
        Complex s = 0;
        for (Eigen::Index j = 0; j < dim_b; ++j) {
          s += r(i * dim_b + j, k * dim_b + j);
        }
        out(i, k) = s;
      }
    }
    return DensityOperator(std::move(out));
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Eigen::Index j = 0; j < dim_b; ++j) {
    for (Eigen::Index l = 0; l < dim_b; ++l) {
      Complex s = 0;
      for (Eigen::Index i = 0; i < dim_a; ++i) {
        s += r(i * dim_b + j, i * dim_b + l);
      }
      out(j, l) = s;
    }
  }
  return DensityOperator(std::move(out));
}

SchmidtSpectrum schmidt_spectrum(const PureBipartiteState& state) {
  Eigen::JacobiSVD<Matrix> svd(state.amplitudes());
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(svd.singularValues().size()));
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double v = svd.singularValues()(i) * svd.singularValues()(i);
    if (v >= kSchmidtTrimTol) {
      values.push_back(v);
    }
  }
  // renormalize the trimmed tail mass (< d * 1e-14) away
  double sum = 0.0;
  for (double v : values) sum += v;
  for (double& v : values) v /= sum;
  return SchmidtSpectrum(std::move(values));
}

double von_neumann_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) {
      s -= p * std::log(p);
    }
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const SchmidtSpectrum& spectrum) {
  return von_neumann_entropy(std::span<const double>(spectrum.values()));
}

double von_neumann_entropy(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    const double p = solver.eigenvalues()(i);
    if (p > 0.0) {
      s -= p * std::log(p);
    }
  }
  return std::max(s, 0.0);
}

double overlap_fidelity(const DensityOperator& output, const PureBipartiteState& target) {
  if (output.dim() != target.dim_a() * target.dim_b()) {
    throw ValidationError("overlap_fidelity: dimension mismatch");
  }
  const Vector v = target.joint_vector();
  const double f = (v.adjoint() * output.matrix() * v)(0, 0).real();
  if (f < -kTraceTol || f > 1.0 + kTraceTol) {
    throw ValidationError("overlap_fidelity: value " + std::to_string(f) + " outside [0,1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

PureBipartiteState maximally_entangled(Eigen::Index m) {
  if (m < 1) {
    throw ValidationError("maximally_entangled: rank must be >= 1");
  }
  Matrix amp = Matrix::Identity(m, m) / std::sqrt(static_cast<double>(m));
  return PureBipartiteState(m, m, std::move(amp));
}

}  // namespace entspec
