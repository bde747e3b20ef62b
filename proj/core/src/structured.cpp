#include "entspec/structured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace entspec {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogPrune = -690.77552789821368;  // ln(1e-300)
constexpr double kMergeLogTol = 1e-14;
}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sub_exp(double a, double b) {
  if (b == kNegInf) return a;
  if (!(a >= b)) {
    throw ValidationError("log_sub_exp: negative difference");
  }
  if (a == b) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

StructuredSpectrum::StructuredSpectrum(std::vector<double> log_eigenvalues,
                                       std::vector<double> log_multiplicities,
                                       std::optional<std::vector<BigInt>> exact_multiplicities)
    : log_eig_(std::move(log_eigenvalues)),
      log_mult_(std::move(log_multiplicities)),
      exact_mult_(std::move(exact_multiplicities)) {
  if (log_eig_.empty() || log_eig_.size() != log_mult_.size() ||
      (exact_mult_ && exact_mult_->size() != log_eig_.size())) {
    throw ValidationError("StructuredSpectrum: inconsistent class arrays");
  }

  // sort descending by eigenvalue, then merge equal classes
  std::vector<std::size_t> order(log_eig_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return log_eig_[a] > log_eig_[b]; });

  std::vector<double> le, lm;
  std::vector<BigInt> em;
  le.reserve(log_eig_.size());
  lm.reserve(log_eig_.size());
  if (exact_mult_) em.reserve(log_eig_.size());

  CompensatedSum pruned;
  for (std::size_t idx : order) {
    const double e = log_eig_[idx];
    const double m = log_mult_[idx];
    // classes whose entire mass is below the representable floor carry
    // nothing any consumer can see
    if (m + e < kLogPrune) {
      pruned.add(std::exp(m + e));
      continue;
    }
    if (!le.empty() && le.back() - e <= kMergeLogTol) {
      lm.back() = log_add_exp(lm.back(), m);
      if (exact_mult_) em.back() += (*exact_mult_)[idx];
    } else {
      le.push_back(e);
      lm.push_back(m);
      if (exact_mult_) em.push_back((*exact_mult_)[idx]);
    }
  }
  pruned_mass_ = pruned.value();
  if (pruned_mass_ >= kPrunedMassTol) {
    throw ValidationError("StructuredSpectrum: pruned eigenvalue mass " +
                          std::to_string(pruned_mass_) + " exceeds tolerance");
  }
  if (le.empty()) {
    throw ValidationError("StructuredSpectrum: all classes pruned");
  }
  log_eig_ = std::move(le);
  log_mult_ = std::move(lm);
  if (exact_mult_) {
    exact_mult_ = std::move(em);
  }

  CompensatedSum mass;
  double log_count = kNegInf;
  for (std::size_t i = 0; i < log_eig_.size(); ++i) {
    mass.add(std::exp(log_mult_[i] + log_eig_[i]));
    log_count = log_add_exp(log_count, log_mult_[i]);
  }
  total_mass_ = mass.value() + pruned_mass_;
  log_total_count_ = log_count;
  if (std::abs(total_mass_ - 1.0) > kStructuredMassTol) {
    throw ValidationError("StructuredSpectrum: total mass " + std::to_string(total_mass_) +
                          " deviates from 1");
  }
}

StructuredSpectrum StructuredSpectrum::from_values(std::span<const double> values) {
  std::vector<double> le, lm;
  std::vector<BigInt> em;
  le.reserve(values.size());
  for (double v : values) {
    if (v < 0.0) {
      throw ValidationError("StructuredSpectrum::from_values: negative value");
    }
    if (v <= 0.0) continue;  // zero eigenvalues carry no class
    le.push_back(std::log(v));
    lm.push_back(0.0);
    em.push_back(1);
  }
  if (le.empty()) {
    throw ValidationError("StructuredSpectrum::from_values: no positive values");
  }
  return StructuredSpectrum(std::move(le), std::move(lm), std::move(em));
}

double StructuredSpectrum::eigenvalue(std::size_t i) const {
  return std::exp(log_eig_[i]);
}

double StructuredSpectrum::class_mass(std::size_t i) const {
  return std::exp(log_mult_[i] + log_eig_[i]);
}

TailSum tail_sum_log(const StructuredSpectrum& spectrum, double log_threshold) {
  TailSum out;
  CompensatedSum mass, excess;
  double log_count = kNegInf;
  std::optional<BigInt> count;
  if (spectrum.has_exact_multiplicities()) {
    count = BigInt(0);
  }
  for (std::size_t i = 0; i < spectrum.class_count(); ++i) {
    const double le = spectrum.log_eigenvalue(i);
    if (le < log_threshold) break;  // classes are descending
    const double lm = spectrum.log_multiplicity(i);
    const double class_mass = std::exp(lm + le);
    mass.add(class_mass);
    excess.add(class_mass * (-std::expm1(log_threshold - le)));
    log_count = log_add_exp(log_count, lm);
    if (count) *count += spectrum.exact_multiplicity(i);
  }
  out.mass = mass.value();
  out.excess = excess.value();
  out.log_count = log_count;
  out.count = std::move(count);
  return out;
}

TailSum tail_sum(const StructuredSpectrum& spectrum, double threshold) {
  if (!(threshold > 0.0)) {
    throw ValidationError("tail_sum: threshold must be positive");
  }
  return tail_sum_log(spectrum, std::log(threshold));
}

}  // namespace entspec
