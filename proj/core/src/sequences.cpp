#include "entspec/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace entspec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kClassCountCap = 25'000'000;

void check_copy_count(int n) {
  if (n < 1) {
    throw ValidationError("copy count must be >= 1");
  }
  if (n > kCopyCountCap) {
    throw ResourceCapError("copy count " + std::to_string(n) + " exceeds cap " +
                           std::to_string(kCopyCountCap));
  }
}

std::vector<double> normalized_spectrum(std::vector<double> values) {
  if (values.empty()) {
    throw ValidationError("spectrum must be nonempty");
  }
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0) {
      throw ValidationError("spectrum entries must be nonnegative");
    }
    sum += v;
  }
  if (sum <= 0.0) {
    throw ValidationError("spectrum must have positive mass");
  }
  for (double& v : values) v /= sum;
  return values;
}

double log_class_count(int n, int m) {
  // C(n+m-1, m-1)
  return std::lgamma(n + m) - std::lgamma(static_cast<double>(m)) - std::lgamma(n + 1.0);
}

/// Visit every composition (k_1,...,k_m) of n together with its multinomial
/// coefficient, built incrementally as multinomial(n;k) = prod_i C(r_i, k_i)
/// with r_i the count still unassigned. The binomials update by one exact
/// small-integer multiply/divide per step, so exact BigInt coefficients stay
/// cheap even with millions of classes.
void for_each_type(int n, int m, bool exact,
                   const std::function<void(const std::vector<int>&, double, const BigInt*)>& visit) {
  std::vector<int> k(static_cast<std::size_t>(m));
  std::vector<double> lg(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) lg[i] = std::lgamma(i + 1.0);
  std::function<void(int, int, double, const BigInt&)> rec = [&](int slot, int remaining,
                                                                 double log_coeff,
                                                                 const BigInt& coeff) {
    if (slot == m - 1) {
      k[static_cast<std::size_t>(slot)] = remaining;
      visit(k, log_coeff, exact ? &coeff : nullptr);
      return;
    }
    BigInt bc = 1;  // C(remaining, c), walked down from c = remaining
    for (int c = remaining; c >= 0; --c) {
      k[static_cast<std::size_t>(slot)] = c;
      const double log_bc = lg[remaining] - lg[c] - lg[remaining - c];
      if (exact) {
        BigInt child = coeff * bc;
        rec(slot + 1, remaining - c, log_coeff + log_bc, child);
        if (c > 0) {
          bc *= c;
          bc /= remaining - c + 1;
        }
      } else {
        rec(slot + 1, remaining - c, log_coeff + log_bc, coeff);
      }
    }
  };
  rec(0, n, 0.0, BigInt(1));
}

Matrix kron_power(const Matrix& m, int n) {
  Matrix out = m;
  for (int i = 1; i < n; ++i) {
    Matrix next(out.rows() * m.rows(), out.cols() * m.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = out(r, c) * m;
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

StateSequence StateSequence::iid(std::vector<double> single_copy_spectrum) {
  StateSequence seq;
  seq.kind_ = Kind::Iid;
  seq.slot_values_ = normalized_spectrum(std::move(single_copy_spectrum));
  std::sort(seq.slot_values_.begin(), seq.slot_values_.end(), std::greater<>());
  seq.single_copy_dim_ = static_cast<int>(seq.slot_values_.size());
  // group equal eigenvalues; zero values never contribute a class
  for (double v : seq.slot_values_) {
    if (v <= 0.0) continue;
    if (!seq.distinct_values_.empty() && seq.distinct_values_.back() - v <= 1e-12) {
      ++seq.distinct_counts_.back();
    } else {
      seq.distinct_values_.push_back(v);
      seq.distinct_counts_.push_back(1);
    }
  }
  if (seq.distinct_values_.empty()) {
    throw ValidationError("iid sequence needs at least one positive eigenvalue");
  }
  return seq;
}

StateSequence StateSequence::iid(const DensityOperator& rho0) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho0.matrix(), Eigen::EigenvaluesOnly);
  std::vector<double> spectrum;
  spectrum.reserve(static_cast<std::size_t>(rho0.dim()));
  for (Eigen::Index i = 0; i < rho0.dim(); ++i) {
    spectrum.push_back(std::max(solver.eigenvalues()(i), 0.0));
  }
  StateSequence seq = iid(std::move(spectrum));
  const double offdiag =
      (rho0.matrix() - Matrix(rho0.matrix().diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (offdiag > 1e-12) {
    // keep the dense operator; pairing with other structured sequences is
    // rejected because simultaneous diagonality cannot be certified
    seq.dense_single_copy_ = std::make_shared<DensityOperator>(rho0);
    seq.slot_values_.clear();
  }
  return seq;
}

StateSequence StateSequence::mixture(MixtureSpec spec) {
  if (spec.sigma.size() != spec.omega.size()) {
    throw ValidationError("mixture: sigma and omega must share a basis (equal lengths)");
  }
  if (!(spec.t > 0.0 && spec.t < 1.0)) {
    throw ValidationError("mixture: t must lie in (0,1)");
  }
  spec.sigma = normalized_spectrum(std::move(spec.sigma));
  spec.omega = normalized_spectrum(std::move(spec.omega));
  StateSequence seq;
  seq.kind_ = Kind::Mixture;
  seq.single_copy_dim_ = static_cast<int>(spec.sigma.size());
  seq.mixture_ = std::move(spec);
  return seq;
}

StateSequence StateSequence::dense_list(std::vector<DensityOperator> states) {
  if (states.empty()) {
    throw ValidationError("dense_list: no states");
  }
  StateSequence seq;
  seq.kind_ = Kind::DenseList;
  seq.dense_states_ = std::make_shared<std::vector<DensityOperator>>(std::move(states));
  return seq;
}

StateSequence StateSequence::purified() const {
  if (kind_ == Kind::DenseList) {
    throw ValidationError("dense_list sequences have no canonical purification");
  }
  if (kind_ == Kind::Purified) {
    return *this;
  }
  StateSequence seq;
  seq.kind_ = Kind::Purified;
  seq.single_copy_dim_ = single_copy_dim_;
  seq.base_ = std::make_shared<StateSequence>(*this);
  return seq;
}

StructuredSpectrum StateSequence::spectrum_at(int n) const {
  check_copy_count(n);
  switch (kind_) {
    case Kind::Purified:
      return base_->spectrum_at(n);
    case Kind::DenseList: {
      if (static_cast<std::size_t>(n) > dense_states_->size()) {
        throw ValidationError("dense_list: no state stored for n=" + std::to_string(n));
      }
      const auto& rho = (*dense_states_)[static_cast<std::size_t>(n) - 1];
      Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
      std::vector<double> values;
      for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        values.push_back(std::max(solver.eigenvalues()(i), 0.0));
      }
      return StructuredSpectrum::from_values(values);
    }
    case Kind::Iid: {
      const int m = static_cast<int>(distinct_values_.size());
      if (std::exp(log_class_count(n, m)) > static_cast<double>(kClassCountCap)) {
        throw ResourceCapError("type-class count exceeds cap for n=" + std::to_string(n));
      }
      std::vector<double> log_values(distinct_values_.size());
      std::vector<double> log_counts(distinct_counts_.size());
      for (std::size_t i = 0; i < distinct_values_.size(); ++i) {
        log_values[i] = std::log(distinct_values_[i]);
        log_counts[i] = std::log(static_cast<double>(distinct_counts_[i]));
      }
      const bool exact = n <= kExactMultiplicityMaxN;
      std::vector<double> le, lm;
      std::optional<std::vector<BigInt>> em;
      if (exact) em.emplace();
      for_each_type(n, m, exact,
                    [&](const std::vector<int>& type, double log_multinomial, const BigInt* coeff) {
        double log_eig = 0.0;
        double log_mult = log_multinomial;
        for (int i = 0; i < m; ++i) {
          log_eig += type[i] * log_values[i];
          log_mult += type[i] * log_counts[i];
        }
        le.push_back(log_eig);
        lm.push_back(log_mult);
        if (coeff) {
          BigInt mult = *coeff;
          for (int i = 0; i < m; ++i) {
            if (distinct_counts_[i] > 1 && type[i] > 0) {
              mult *= boost::multiprecision::pow(BigInt(distinct_counts_[i]),
                                                 static_cast<unsigned>(type[i]));
            }
          }
          em->push_back(std::move(mult));
        }
      });
      return StructuredSpectrum(std::move(le), std::move(lm), std::move(em));
    }
    case Kind::Mixture: {
      const int m = single_copy_dim_;
      if (std::exp(log_class_count(n, m)) > static_cast<double>(kClassCountCap)) {
        throw ResourceCapError("type-class count exceeds cap for n=" + std::to_string(n));
      }
      std::vector<double> ls(mixture_.sigma.size()), lo(mixture_.omega.size());
      for (std::size_t i = 0; i < mixture_.sigma.size(); ++i) {
        ls[i] = mixture_.sigma[i] > 0 ? std::log(mixture_.sigma[i]) : kNegInf;
        lo[i] = mixture_.omega[i] > 0 ? std::log(mixture_.omega[i]) : kNegInf;
      }
      const double lt = std::log(mixture_.t);
      const double lu = std::log1p(-mixture_.t);
      const bool exact = n <= kExactMultiplicityMaxN;
      std::vector<double> le, lm;
      std::optional<std::vector<BigInt>> em;
      if (exact) em.emplace();
      for_each_type(n, m, exact,
                    [&](const std::vector<int>& type, double log_multinomial, const BigInt* coeff) {
        double log_sig = lt, log_om = lu;
        for (int i = 0; i < m; ++i) {
          if (type[i] > 0) {
            log_sig += ls[i] == kNegInf ? kNegInf : type[i] * ls[i];
            log_om += lo[i] == kNegInf ? kNegInf : type[i] * lo[i];
          }
        }
        le.push_back(log_add_exp(log_sig, log_om));
        lm.push_back(log_multinomial);
        if (coeff) {
          em->push_back(*coeff);
        }
      });
      return StructuredSpectrum(std::move(le), std::move(lm), std::move(em));
    }
  }
  throw ValidationError("spectrum_at: unreachable");
}

bool StateSequence::dense_available(int n) const {
  if (n < 1 || n > kCopyCountCap) return false;
  switch (kind_) {
    case Kind::DenseList:
      return static_cast<std::size_t>(n) <= dense_states_->size();
    case Kind::Purified: {
      const StructuredSpectrum spec = base_->spectrum_at(n);
      return spec.log_total_count() <= std::log(static_cast<double>(kDenseDimCap)) + 1e-9;
    }
    case Kind::Iid:
    case Kind::Mixture:
      return std::pow(static_cast<double>(single_copy_dim_), n) <=
             static_cast<double>(kDenseDimCap) + 0.5;
  }
  return false;
}

DensityOperator StateSequence::density_at(int n) const {
  check_copy_count(n);
  switch (kind_) {
    case Kind::DenseList: {
      if (static_cast<std::size_t>(n) > dense_states_->size()) {
        throw ValidationError("dense_list: no state stored for n=" + std::to_string(n));
      }
      return (*dense_states_)[static_cast<std::size_t>(n) - 1];
    }
    case Kind::Purified:
      return pure_state_at(n).joint_density();
    case Kind::Iid: {
      if (!dense_available(n)) {
        throw ResourceCapError("dense realization of d^n exceeds the dense cap");
      }
      if (dense_single_copy_) {
        return DensityOperator(kron_power(dense_single_copy_->matrix(), n));
      }
      Matrix rho0 = Matrix::Zero(single_copy_dim_, single_copy_dim_);
      for (int i = 0; i < single_copy_dim_; ++i) rho0(i, i) = slot_values_[static_cast<std::size_t>(i)];
      return DensityOperator(kron_power(rho0, n));
    }
    case Kind::Mixture: {
      if (!dense_available(n)) {
        throw ResourceCapError("dense realization of d^n exceeds the dense cap");
      }
      Matrix sig = Matrix::Zero(single_copy_dim_, single_copy_dim_);
      Matrix om = Matrix::Zero(single_copy_dim_, single_copy_dim_);
      for (int i = 0; i < single_copy_dim_; ++i) {
        sig(i, i) = mixture_.sigma[static_cast<std::size_t>(i)];
        om(i, i) = mixture_.omega[static_cast<std::size_t>(i)];
      }
      return DensityOperator(
          Matrix(mixture_.t * kron_power(sig, n) + (1.0 - mixture_.t) * kron_power(om, n)));
    }
  }
  throw ValidationError("density_at: unreachable");
}

PureBipartiteState StateSequence::pure_state_at(int n) const {
  check_copy_count(n);
  if (kind_ == Kind::DenseList) {
    throw ValidationError("dense_list sequences do not realize pure bipartite states");
  }
  const StructuredSpectrum spec =
      kind_ == Kind::Purified ? base_->spectrum_at(n) : spectrum_at(n);
  if (spec.log_total_count() > std::log(static_cast<double>(kDenseDimCap)) + 1e-9) {
    throw ResourceCapError("purification rank exceeds the dense cap");
  }
  std::vector<double> values;
  for (std::size_t i = 0; i < spec.class_count(); ++i) {
    const auto count = static_cast<std::size_t>(std::llround(std::exp(spec.log_multiplicity(i))));
    for (std::size_t c = 0; c < count; ++c) {
      values.push_back(spec.eigenvalue(i));
    }
  }
  const auto r = static_cast<Eigen::Index>(values.size());
  Matrix amp = Matrix::Zero(r, r);
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < r; ++i) norm2 += values[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i < r; ++i) {
    amp(i, i) = std::sqrt(values[static_cast<std::size_t>(i)] / norm2);
  }
  return PureBipartiteState(r, r, std::move(amp));
}

PairedClasses StateSequence::realize_pair(const StateSequence& other, int n) const {
  check_copy_count(n);
  const StateSequence& lhs = kind_ == Kind::Purified ? *base_ : *this;
  const StateSequence& rhs = other.kind_ == Kind::Purified ? *other.base_ : other;
  if (!lhs.structured_available() || !rhs.structured_available()) {
    throw ValidationError("realize_pair: both sequences must be structured");
  }
  if (lhs.dense_single_copy_ || rhs.dense_single_copy_) {
    throw ValidationError(
        "realize_pair: sequences built from non-diagonal operators are not certified "
        "simultaneously diagonal");
  }
  if (lhs.single_copy_dim_ != rhs.single_copy_dim_) {
    throw ValidationError("realize_pair: single-copy dimensions differ");
  }
  const int m = lhs.single_copy_dim_;
  if (std::exp(log_class_count(n, m)) > static_cast<double>(kClassCountCap)) {
    throw ResourceCapError("type-class count exceeds cap for n=" + std::to_string(n));
  }

  auto slot_log = [](const StateSequence& s, int slot) -> std::pair<double, double> {
    // (log sigma-part, log omega-part) in mixture form; iid collapses to one branch
    if (s.kind_ == Kind::Iid) {
      const double v = s.slot_values_[static_cast<std::size_t>(slot)];
      return {v > 0 ? std::log(v) : kNegInf, kNegInf};
    }
    const double sv = s.mixture_.sigma[static_cast<std::size_t>(slot)];
    const double ov = s.mixture_.omega[static_cast<std::size_t>(slot)];
    return {sv > 0 ? std::log(sv) : kNegInf, ov > 0 ? std::log(ov) : kNegInf};
  };

  PairedClasses out;
  out.n = n;
  auto add_weighted = [](double acc, int count, double log_value) {
    if (count == 0) return acc;
    return log_value == kNegInf ? kNegInf : acc + count * log_value;
  };
  auto eval_sequence = [&](const StateSequence& s, const std::vector<int>& type) {
    if (s.kind_ == Kind::Iid) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) {
        acc = add_weighted(acc, type[i], slot_log(s, i).first);
      }
      return acc;
    }
    double sig = std::log(s.mixture_.t);
    double om = std::log1p(-s.mixture_.t);
    for (int i = 0; i < m; ++i) {
      const auto [a, b] = slot_log(s, i);
      sig = add_weighted(sig, type[i], a);
      om = add_weighted(om, type[i], b);
    }
    return log_add_exp(sig, om);
  };
  for_each_type(n, m, false,
                [&](const std::vector<int>& type, double log_multinomial, const BigInt*) {
    out.log_mult.push_back(log_multinomial);
    out.log_eig_rho.push_back(eval_sequence(lhs, type));
    out.log_eig_omega.push_back(eval_sequence(rhs, type));
  });
  return out;
}

}  // namespace entspec
