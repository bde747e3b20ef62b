#pragma once

#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "entspec/errors.hpp"

namespace entspec {

using BigInt = boost::multiprecision::cpp_int;

// Exact arbitrary-precision multiplicities are kept up to this copy count;
// beyond it only log-multiplicities are stored (multinomials overflow 64
// bits near n = 60 already for d >= 2).
inline constexpr int kExactMultiplicityMaxN = 300;

// Classes whose mass (multiplicity times eigenvalue) falls below this are
// pruned; the pruned mass is tracked and must stay below kPrunedMassTol.
inline constexpr double kPruneClassMass = 1e-300;
inline constexpr double kPrunedMassTol = 1e-12;

inline constexpr double kStructuredMassTol = 1e-9;

/// Spectrum of a d^n-dimensional operator held as eigenvalue classes:
/// (eigenvalue, multiplicity) with multiplicities possibly far beyond
/// 2^63. Eigenvalues and multiplicities are carried in log form (natural
/// log); exact integer multiplicities are attached when n is small enough.
/// Classes are sorted by descending eigenvalue and total mass
/// sum(mult * eig) must equal 1 to kStructuredMassTol.
class StructuredSpectrum {
 public:
  StructuredSpectrum(std::vector<double> log_eigenvalues, std::vector<double> log_multiplicities,
                     std::optional<std::vector<BigInt>> exact_multiplicities);

  /// Small explicit spectrum (each value multiplicity one; equal values merged).
  static StructuredSpectrum from_values(std::span<const double> values);

  std::size_t class_count() const { return log_eig_.size(); }
  double log_eigenvalue(std::size_t i) const { return log_eig_[i]; }
  double eigenvalue(std::size_t i) const;
  double log_multiplicity(std::size_t i) const { return log_mult_[i]; }
  /// mult * eig for class i (never under/overflows; computed in log space).
  double class_mass(std::size_t i) const;

  bool has_exact_multiplicities() const { return exact_mult_.has_value(); }
  const BigInt& exact_multiplicity(std::size_t i) const { return (*exact_mult_)[i]; }

  double pruned_mass() const { return pruned_mass_; }
  double total_mass() const { return total_mass_; }
  /// log of the total eigenvalue count (the operator dimension for full support).
  double log_total_count() const { return log_total_count_; }

 private:
  std::vector<double> log_eig_;   // strictly decreasing
  std::vector<double> log_mult_;
  std::optional<std::vector<BigInt>> exact_mult_;
  double pruned_mass_ = 0.0;
  double total_mass_ = 0.0;
  double log_total_count_ = 0.0;
};

struct TailSum {
  double mass = 0.0;       // sum of mult*eig over eig >= c
  double excess = 0.0;     // sum of mult*(eig - c)
  double log_count = 0.0;  // log of sum of mult ( -inf when empty )
  std::optional<BigInt> count;  // exact when available
};

/// Tail over the closed condition eig >= c (ties resolve into the tail).
TailSum tail_sum(const StructuredSpectrum& spectrum, double threshold);
TailSum tail_sum_log(const StructuredSpectrum& spectrum, double log_threshold);

/// Compensated (Neumaier) summation helper used throughout the tail math.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);
/// log(exp(a) - exp(b)), requires a >= b.
double log_sub_exp(double a, double b);

}  // namespace entspec
