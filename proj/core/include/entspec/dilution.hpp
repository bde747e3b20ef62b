#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entspec/operators.hpp"
#include "entspec/sequences.hpp"
#include "entspec/structured.hpp"

namespace entspec {

/// |sum of the M largest Schmidt eigenvalues|^2; exactly 1 once M covers the
/// full rank (teleportation is then perfect).
double truncation_fidelity(const SchmidtSpectrum& spectrum, std::uint64_t m);
double truncation_fidelity(const StructuredSpectrum& spectrum, double log_m);

struct CodingFidelity {
  double fidelity = 0.0;       // Tr[{rho^A >= e^{-n alpha} I} rho^A]
  double log_rank_count = 0.0; // log Tr[{rho^A >= e^{-n alpha} I}], <= n*alpha
  std::optional<BigInt> rank_count;
};

/// Fidelity of diluting onto the threshold-projected target; ties resolve
/// into the projector (closed condition).
CodingFidelity coding_fidelity(const StructuredSpectrum& subsystem, double alpha, int n);

struct ConverseBound {
  double term_projection = 0.0;  // Tr[{sigma >= e^{-n gamma} I}(sigma - e^{-n gamma} I)]
  double term_rate = 0.0;        // e^{-n(gamma - R)}
  double total = 0.0;
};

ConverseBound dilution_converse_bound(const StructuredSpectrum& sigma_n, double gamma, double rate,
                                      int n);

enum class DilutionMode { Achievable, Converse };

struct DilutionOutcome {
  int n = 0;
  DilutionMode mode = DilutionMode::Achievable;
  double alpha_or_gamma = 0.0;
  double log_m = 0.0;
  bool ceil_exact = true;  // false when M > 2^63 and the ceiling was skipped
  double rate = 0.0;
  double fidelity_lb = 0.0;  // achievable mode
  std::optional<double> converse_term1;
  std::optional<double> converse_term2;
  std::optional<double> converse_ub;
};

/// alpha = s_sup_estimate + delta, log M = n*alpha (ceiling while it fits).
std::vector<DilutionOutcome> dilution_achievable_sweep(const StateSequence& seq,
                                                       double s_sup_estimate, double delta,
                                                       const std::vector<int>& n_list);

std::vector<DilutionOutcome> dilution_converse_sweep(const StateSequence& seq, double gamma,
                                                     double rate, const std::vector<int>& n_list);

}  // namespace entspec
