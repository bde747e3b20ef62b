#pragma once

#include <optional>
#include <span>
#include <vector>

#include "entspec/operators.hpp"
#include "entspec/sequences.hpp"
#include "entspec/structured.hpp"

namespace entspec {

inline constexpr std::size_t kPostSpectrumHead = 64;

/// One run of the threshold-measurement concentration protocol.
struct ConcentrationOutcome {
  int n = 0;
  double gamma = 0.0;
  double p_fail = 0.0;        // mass of eigenvalues >= e^{-n gamma}
  double success_mass = 0.0;  // Tr[Q rho]
  double log_m = 0.0;         // ln M, M = floor(success_mass * e^{n gamma})
  bool floor_exact = true;    // false when M > 2^63 and the floor was skipped
  double rate = 0.0;          // log_m / n
  std::vector<double> post_spectrum_head;  // leading values of the renormalized post spectrum
  double post_head_mass = 0.0;
  bool majorization_ok = false;
  std::optional<double> rate_lower_bound;  // absent when p_fail >= 1/2
};

/// Threshold measurement Q = {rho < e^{-n gamma} I}; eigenvalues within a
/// relative 1e-12 of the threshold go to the failure projector. Throws
/// ProtocolAbort when M = 0 or the measurement never succeeds.
ConcentrationOutcome concentrate(const StructuredSpectrum& phi_spectrum, double gamma, int n);
ConcentrationOutcome concentrate(const SchmidtSpectrum& phi_spectrum, double gamma, int n);

/// Prefix-sum dominance of descending spectra (target zero-padded): true
/// iff a state with the source spectrum converts to one with the target
/// spectrum under LOCC.
bool nielsen_majorizes(std::span<const double> source, std::span<const double> target);

std::vector<ConcentrationOutcome> concentration_sweep(const StateSequence& seq, double gamma,
                                                      const std::vector<int>& n_list);

/// R >= gamma - (2/n)(eps_n + e^{-n gamma}); requires eps_n < 1/2.
double rate_lower_bound(double gamma, int n, double eps_n);

}  // namespace entspec
