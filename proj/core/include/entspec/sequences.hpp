#pragma once

#include <memory>
#include <vector>

#include "entspec/operators.hpp"
#include "entspec/structured.hpp"

namespace entspec {

inline constexpr int kCopyCountCap = 500;

/// rho_n = t sigma^{(x)n} + (1-t) omega^{(x)n} with sigma, omega diagonal in
/// the same basis by construction.
struct MixtureSpec {
  std::vector<double> sigma;  // single-copy spectra over the shared basis
  std::vector<double> omega;
  double t = 0.5;
};

/// Per-type classes of a pair of simultaneously diagonal operators at copy
/// count n: aligned slot-type enumeration, no merging, equal multiplicities.
struct PairedClasses {
  int n = 0;
  std::vector<double> log_eig_rho;
  std::vector<double> log_eig_omega;
  std::vector<double> log_mult;
};

/// Generator for a sequence {rho_n}. Immutable specification; realization at
/// an index is a pure function and may run concurrently for distinct n.
class StateSequence {
 public:
  enum class Kind { Iid, Mixture, DenseList, Purified };

  static StateSequence iid(std::vector<double> single_copy_spectrum);
  static StateSequence iid(const DensityOperator& rho0);
  static StateSequence mixture(MixtureSpec spec);
  static StateSequence dense_list(std::vector<DensityOperator> states);

  /// Bipartite purification view: spectrum_at stays the Schmidt spectrum,
  /// pure_state_at realizes |phi_n> densely when it fits.
  StateSequence purified() const;

  Kind kind() const { return kind_; }
  bool is_purified() const { return kind_ == Kind::Purified; }
  /// d for iid/mixture; 0 for dense lists.
  int single_copy_dim() const { return single_copy_dim_; }
  bool structured_available() const { return kind_ != Kind::DenseList; }

  StructuredSpectrum spectrum_at(int n) const;
  bool dense_available(int n) const;
  DensityOperator density_at(int n) const;
  PureBipartiteState pure_state_at(int n) const;

  /// Slot-aligned realization of (this, other) at n; requires both
  /// structured with the same single-copy dimension (simultaneously
  /// diagonal inputs). Throws otherwise.
  PairedClasses realize_pair(const StateSequence& other, int n) const;

 private:
  StateSequence() = default;

  Kind kind_ = Kind::Iid;
  int single_copy_dim_ = 0;
  // iid payload: distinct eigenvalues + their single-copy multiplicities,
  // and the raw per-slot spectrum for pair alignment
  std::vector<double> distinct_values_;
  std::vector<int> distinct_counts_;
  std::vector<double> slot_values_;
  std::shared_ptr<const DensityOperator> dense_single_copy_;
  // mixture payload
  MixtureSpec mixture_;
  // dense list payload (index n-1)
  std::shared_ptr<const std::vector<DensityOperator>> dense_states_;
  std::shared_ptr<const StateSequence> base_;  // for Purified
};

}  // namespace entspec
