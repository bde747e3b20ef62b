#include "entspec/random.hpp"

#include <cmath>
#include <numbers>

namespace entspec {

namespace {

void check_random_dim(Eigen::Index dim) {
  if (dim < 1 || dim > kRandomDimCap) {
    throw ValidationError("random generators support dims 1.." + std::to_string(kRandomDimCap));
  }
}

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

// xoshiro256** seeded via splitmix64; bit-stable across platforms, unlike the
// standard library distributions.
RandomSource::RandomSource(std::uint64_t seed) {
  for (auto& s : state_) {
    s = splitmix64(seed);
  }
}

std::uint64_t RandomSource::next_bits() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomSource::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double RandomSource::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = uniform();
  while (u <= 0.0) u = uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double theta = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex RandomSource::complex_gaussian() {
  return {gaussian(), gaussian()};
}

std::uint64_t RandomSource::integer(std::uint64_t bound) {
  return bound == 0 ? 0 : next_bits() % bound;
}

Matrix random_unitary(RandomSource& rng, Eigen::Index dim) {
  check_random_dim(dim);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the distribution is Haar
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
  }
  return q;
}

PureBipartiteState random_pure_state(RandomSource& rng, Eigen::Index dim_a, Eigen::Index dim_b) {
  check_random_dim(dim_a);
  check_random_dim(dim_b);
  Matrix amp(dim_a, dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    for (Eigen::Index j = 0; j < dim_b; ++j) {
      amp(i, j) = rng.complex_gaussian();
    }
  }
  amp /= amp.norm();
  return PureBipartiteState(dim_a, dim_b, std::move(amp));
}

DensityOperator random_density(RandomSource& rng, Eigen::Index dim) {
  check_random_dim(dim);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho));
}

HermitianOperator random_hermitian(RandomSource& rng, Eigen::Index dim) {
  check_random_dim(dim);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return HermitianOperator(Matrix((g + g.adjoint()) / 2.0));
}

HermitianOperator random_contraction(RandomSource& rng, Eigen::Index dim) {
  check_random_dim(dim);
  const Matrix u = random_unitary(rng, dim);
  Matrix d = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    d(i, i) = rng.uniform();
  }
  return HermitianOperator(Matrix(u * d * u.adjoint()));
}

KrausMap random_kraus_map(RandomSource& rng, Eigen::Index dim, std::size_t term_count) {
  check_random_dim(dim);
  if (term_count == 0) {
    term_count = 2 + static_cast<std::size_t>(rng.integer(3));
  }
  const Eigen::Index dilated = dim * static_cast<Eigen::Index>(term_count);
  if (dilated > kRandomDimCap * 4) {
    throw ValidationError("random_kraus_map: dilated dimension too large");
  }
  // Haar unitary on the dilation needs its own cap-free path
  Matrix g(dilated, dilated);
  for (Eigen::Index i = 0; i < dilated; ++i) {
    for (Eigen::Index j = 0; j < dilated; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix u = qr.householderQ();
  std::vector<Matrix> ops;
  ops.reserve(term_count);
  for (std::size_t j = 0; j < term_count; ++j) {
    ops.push_back(u.block(static_cast<Eigen::Index>(j) * dim, 0, dim, dim));
  }
  return KrausMap(std::move(ops));
}

SeparableState random_separable(RandomSource& rng, Eigen::Index dim_a, Eigen::Index dim_b) {
  check_random_dim(dim_a);
  check_random_dim(dim_b);
  const std::size_t max_terms = static_cast<std::size_t>(dim_a * dim_b);
  const std::size_t count = 1 + static_cast<std::size_t>(rng.integer(max_terms));
  std::vector<SeparableState::Term> terms;
  terms.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    Vector a(dim_a), b(dim_b);
    for (Eigen::Index i = 0; i < dim_a; ++i) a(i) = rng.complex_gaussian();
    for (Eigen::Index j = 0; j < dim_b; ++j) b(j) = rng.complex_gaussian();
    terms.push_back({rng.uniform() + 1e-3, std::move(a), std::move(b)});
  }
  return SeparableState(dim_a, dim_b, std::move(terms));
}

LoccMap random_locc_map(RandomSource& rng, Eigen::Index dim_a, Eigen::Index dim_b,
                        std::size_t term_count) {
  check_random_dim(dim_a);
  check_random_dim(dim_b);
  if (term_count == 0) {
    term_count = 2 + static_cast<std::size_t>(rng.integer(2));
  }
  const KrausMap kraus_b = random_kraus_map(rng, dim_b, term_count);
  std::vector<LoccMap::Term> terms;
  terms.reserve(term_count);
  for (std::size_t j = 0; j < term_count; ++j) {
    terms.push_back({random_unitary(rng, dim_a), kraus_b.operators()[j]});
  }
  return LoccMap(std::move(terms));
}

}  // namespace entspec
