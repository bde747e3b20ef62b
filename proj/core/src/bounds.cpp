#include "entspec/bounds.hpp"

#include <cmath>

#include "entspec/rates.hpp"

namespace entspec {

namespace {

BoundReport assemble(int n, double gamma, std::uint64_t m, double term_projection) {
  BoundReport out;
  out.n = n;
  out.gamma = gamma;
  out.log_m = std::log(static_cast<double>(m));
  out.term_projection = term_projection;
  out.term_rank = std::exp(static_cast<double>(n) * gamma - out.log_m);
  out.total = out.term_projection + out.term_rank;
  out.vacuous = out.total >= 1.0 - 1e-12;
  return out;
}

void check_bound_inputs(std::uint64_t m, int n, double gamma) {
  if (m == 0) {
    throw ValidationError("fidelity bound: M must be >= 1");
  }
  if (n < 1) {
    throw ValidationError("fidelity bound: n must be >= 1");
  }
  if (std::abs(static_cast<double>(n) * gamma) > 700.0) {
    throw ValidationError("fidelity bound: |n*gamma| > 700");
  }
}

}  // namespace

BoundReport coherent_fidelity_bound(const DensityOperator& omega_ab, Eigen::Index dim_a,
                                    Eigen::Index dim_b, double gamma, std::uint64_t m, int n) {
  check_bound_inputs(m, n, gamma);
  if (dim_a * dim_b != omega_ab.dim()) {
    throw ValidationError("coherent_fidelity_bound: dim_a * dim_b != joint dimension");
  }
  const DensityOperator omega_b = partial_trace(omega_ab, dim_a, dim_b, Side::B);
  const double scale = std::exp(static_cast<double>(n) * gamma);
  Matrix pi = omega_ab.matrix();
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    pi.block(i * dim_b, i * dim_b, dim_b, dim_b) -= scale * omega_b.matrix();
  }
  return assemble(n, gamma, m, positive_part_trace(HermitianOperator(std::move(pi))));
}

BoundReport relent_fidelity_bound(const DensityOperator& rho_ab, const SeparableState& sigma_ab,
                                  double gamma, std::uint64_t m, int n) {
  check_bound_inputs(m, n, gamma);
  if (rho_ab.dim() != sigma_ab.joint().dim()) {
    throw ValidationError("relent_fidelity_bound: dimension mismatch");
  }
  const double scale = std::exp(static_cast<double>(n) * gamma);
  const Matrix pi = rho_ab.matrix() - scale * sigma_ab.joint().matrix();
  return assemble(n, gamma, m, positive_part_trace(HermitianOperator(pi)));
}

std::pair<std::size_t, BoundReport> best_relent_bound(const DensityOperator& rho_ab,
                                                      std::span<const SeparableState> candidates,
                                                      double gamma, std::uint64_t m, int n) {
  if (candidates.empty()) {
    throw ValidationError("best_relent_bound: no candidates");
  }
  std::size_t best = 0;
  BoundReport best_report = relent_fidelity_bound(rho_ab, candidates[0], gamma, m, n);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    BoundReport r = relent_fidelity_bound(rho_ab, candidates[i], gamma, m, n);
    if (r.total < best_report.total) {
      best = i;
      best_report = r;
    }
  }
  return {best, best_report};
}

double dense_coding_capacity(double e_d_estimate, int channel_dim) {
  if (channel_dim < 2) {
    throw ValidationError("dense_coding_capacity: channel dimension must be >= 2");
  }
  if (e_d_estimate < 0.0) {
    throw ValidationError("dense_coding_capacity: E_D estimate must be >= 0");
  }
  return std::log(static_cast<double>(channel_dim)) + e_d_estimate;
}

}  // namespace entspec
