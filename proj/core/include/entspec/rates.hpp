#pragma once

#include <vector>

#include "entspec/operators.hpp"
#include "entspec/sequences.hpp"
#include "entspec/structured.hpp"

namespace entspec {

inline constexpr std::size_t kGridPointCap = 1'000'000;
inline constexpr double kTraceValueSlack = 1e-9;

/// Discretization of the rate parameter gamma (nats).
struct GammaGrid {
  double min = -2.5;
  double max = 2.5;
  double step = 0.005;

  void validate() const;
  std::size_t point_count() const;
  std::vector<double> points() const;
};

struct TracePoint {
  double gamma = 0.0;
  double value = 0.0;  // Tr[{Pi_n(gamma) >= 0} Pi_n(gamma)]
};

/// The trace functional as a function of gamma at fixed n. Construction
/// checks the range [0,1] (to slack) and monotone nonincrease in gamma.
struct TraceCurve {
  int n = 0;
  std::vector<TracePoint> points;

  TraceCurve() = default;
  TraceCurve(int n_, std::vector<TracePoint> pts);
};

/// Finite-n bracket: gamma_hi is the smallest grid gamma with trace <= eps
/// (surrogate for the sup-divergence collapse), gamma_lo the largest with
/// trace >= 1-eps (surrogate for the inf-divergence plateau). When no grid
/// point qualifies the end sits at the grid boundary with its flag set.
struct RateBracket {
  int n = 0;
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  bool lo_out_of_range = false;
  bool hi_out_of_range = false;
};

struct SpectralRateEstimate {
  double epsilon = 0.0;
  std::vector<RateBracket> per_n;
  std::vector<TraceCurve> curves;
};

/// Entropy-rate view of a divergence bracket against the identity sequence:
/// S_inf = -gamma_hi, S_sup = -gamma_lo.
inline double inf_entropy_estimate(const RateBracket& b) { return -b.gamma_hi; }
inline double sup_entropy_estimate(const RateBracket& b) { return -b.gamma_lo; }

/// Tr[{rho_n - e^{n gamma} I >= 0}(rho_n - e^{n gamma} I)] for a structured
/// spectrum (the omega = identity case; always simultaneously diagonal).
double pi_trace(const StructuredSpectrum& rho_n, double gamma, int n);

/// Simultaneously diagonal pair realized over aligned type classes.
double pi_trace(const PairedClasses& pair, double gamma, int n);

/// Dense operators, any Hermitian omega_n.
double pi_trace(const DensityOperator& rho_n, const HermitianOperator& omega_n, double gamma, int n);

/// Sum of eigenvalues >= 0 (closed condition with the usual boundary slack).
double positive_part_trace(const HermitianOperator& op);

/// Conditional-entropy trace functional for a *pure* bipartite state:
/// Tr[{Pi >= 0} Pi] with Pi = psi psi^dag - e^{n gamma} I^A (x) rho^B.
/// Exact block reduction onto the Schmidt-diagonal subspace; at most one
/// nonnegative eigenvalue survives and is found by the secular equation.
double conditional_pi_trace(const PureBipartiteState& psi, double gamma, int n);
double conditional_pi_trace(const StructuredSpectrum& schmidt, double gamma, int n);

/// Dense general case (mixed rho^AB allowed); rho^B by partial trace.
double conditional_pi_trace(const DensityOperator& rho_ab, Eigen::Index dim_a, Eigen::Index dim_b,
                            double gamma, int n);

SpectralRateEstimate estimate_divergence_rates(const StateSequence& rho, const StateSequence& omega,
                                               const std::vector<int>& n_list, const GammaGrid& grid,
                                               double epsilon);

/// Divergence against the identity sequence; entropy estimates via the
/// sign conventions above.
SpectralRateEstimate estimate_entropy_rates(const StateSequence& rho, const std::vector<int>& n_list,
                                            const GammaGrid& grid, double epsilon);

/// Conditional rates for a sequence of bipartite pure states (a purified
/// sequence). Structured-only density sequences are rejected.
SpectralRateEstimate estimate_conditional_rates(const StateSequence& bipartite,
                                                const std::vector<int>& n_list, const GammaGrid& grid,
                                                double epsilon);

/// Same, for explicit dense bipartite densities (index n-1).
struct BipartiteDensity {
  DensityOperator state;
  Eigen::Index dim_a;
  Eigen::Index dim_b;
};
SpectralRateEstimate estimate_conditional_rates(const std::vector<BipartiteDensity>& states,
                                                const std::vector<int>& n_list, const GammaGrid& grid,
                                                double epsilon);

}  // namespace entspec
