#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "entspec/operators.hpp"

namespace entspec {

/// Two-term fidelity upper bound: projection term + e^{n gamma}/M.
struct BoundReport {
  int n = 0;
  double gamma = 0.0;
  double log_m = 0.0;
  double term_projection = 0.0;
  double term_rank = 0.0;
  double total = 0.0;
  bool vacuous = false;  // total >= 1 bounds nothing
};

/// F <= Tr[{w >= e^{n gamma} I^A (x) w^B}(w - e^{n gamma} I^A (x) w^B)] + e^{n gamma}/M
/// with w^B the partial trace of w over A.
BoundReport coherent_fidelity_bound(const DensityOperator& omega_ab, Eigen::Index dim_a,
                                    Eigen::Index dim_b, double gamma, std::uint64_t m, int n);

/// F <= Tr[{rho >= e^{n gamma} sigma}(rho - e^{n gamma} sigma)] + e^{n gamma}/M
/// for separable sigma; every candidate yields a valid bound instance.
BoundReport relent_fidelity_bound(const DensityOperator& rho_ab, const SeparableState& sigma_ab,
                                  double gamma, std::uint64_t m, int n);

/// Tightest candidate (minimum total) and its index.
std::pair<std::size_t, BoundReport> best_relent_bound(const DensityOperator& rho_ab,
                                                      std::span<const SeparableState> candidates,
                                                      double gamma, std::uint64_t m, int n);

/// C_DC = log d + E_D (nats).
double dense_coding_capacity(double e_d_estimate, int channel_dim);

}  // namespace entspec
