#include "entspec/dilution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entspec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieRelTol = 1e-12;
const double kLog2To63 = 63.0 * std::log(2.0);

}  // namespace

double truncation_fidelity(const StructuredSpectrum& spectrum, double log_m) {
  if (log_m < 0.0) {
    throw ValidationError("truncation_fidelity: M must be >= 1");
  }
  if (log_m >= spectrum.log_total_count()) {
    return 1.0;  // M covers the full rank
  }
  CompensatedSum sum;
  double log_count_prefix = kNegInf;
  for (std::size_t i = 0; i < spectrum.class_count(); ++i) {
    const double next_count = log_add_exp(log_count_prefix, spectrum.log_multiplicity(i));
    if (next_count <= log_m) {
      sum.add(spectrum.class_mass(i));
      log_count_prefix = next_count;
      continue;
    }
    // partial class: take M - count_prefix eigenvalues
    const double take =
        log_count_prefix == kNegInf ? log_m : log_sub_exp(log_m, log_count_prefix);
    sum.add(std::exp(take + spectrum.log_eigenvalue(i)));
    break;
  }
  const double s = std::min(sum.value(), 1.0);
  return s * s;
}

double truncation_fidelity(const SchmidtSpectrum& spectrum, std::uint64_t m) {
  if (m == 0) {
    throw ValidationError("truncation_fidelity: M must be >= 1");
  }
  if (m >= spectrum.size()) {
    return 1.0;
  }
  CompensatedSum sum;
  for (std::uint64_t i = 0; i < m; ++i) {
    sum.add(spectrum[static_cast<std::size_t>(i)]);
  }
  const double s = std::min(sum.value(), 1.0);
  return s * s;
}

CodingFidelity coding_fidelity(const StructuredSpectrum& subsystem, double alpha, int n) {
  if (n < 1) {
    throw ValidationError("coding_fidelity: n must be >= 1");
  }
  // closed condition {rho >= e^{-n alpha} I}; ties resolve into the projector
  const double log_threshold = -static_cast<double>(n) * alpha + std::log1p(-kTieRelTol);
  const TailSum tail = tail_sum_log(subsystem, log_threshold);
  CodingFidelity out;
  out.fidelity = std::clamp(tail.mass, 0.0, 1.0);
  out.log_rank_count = tail.log_count;
  out.rank_count = tail.count;
  return out;
}

ConverseBound dilution_converse_bound(const StructuredSpectrum& sigma_n, double gamma, double rate,
                                      int n) {
  if (n < 1) {
    throw ValidationError("dilution_converse_bound: n must be >= 1");
  }
  const double log_threshold = -static_cast<double>(n) * gamma + std::log1p(-kTieRelTol);
  ConverseBound out;
  out.term_projection = tail_sum_log(sigma_n, log_threshold).excess;
  out.term_rate = std::exp(-static_cast<double>(n) * (gamma - rate));
  out.total = out.term_projection + out.term_rate;
  return out;
}

std::vector<DilutionOutcome> dilution_achievable_sweep(const StateSequence& seq,
                                                       double s_sup_estimate, double delta,
                                                       const std::vector<int>& n_list) {
  if (n_list.empty()) {
    throw ValidationError("dilution_achievable_sweep: empty n_list");
  }
  if (delta <= 0.0) {
    throw ValidationError("dilution_achievable_sweep: delta must be positive");
  }
  const double alpha = s_sup_estimate + delta;
  std::vector<DilutionOutcome> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    DilutionOutcome o;
    o.n = n;
    o.mode = DilutionMode::Achievable;
    o.alpha_or_gamma = alpha;
    const double log_m_raw = static_cast<double>(n) * alpha;
    if (log_m_raw <= kLog2To63) {
      const auto m = static_cast<std::uint64_t>(std::ceil(std::exp(log_m_raw) * (1.0 - 1e-12)));
      o.log_m = std::log(static_cast<double>(std::max<std::uint64_t>(m, 1)));
      o.ceil_exact = true;
    } else {
      o.log_m = log_m_raw;
      o.ceil_exact = false;
    }
    o.rate = o.log_m / static_cast<double>(n);
    o.fidelity_lb = coding_fidelity(seq.spectrum_at(n), alpha, n).fidelity;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<DilutionOutcome> dilution_converse_sweep(const StateSequence& seq, double gamma,
                                                     double rate, const std::vector<int>& n_list) {
  if (n_list.empty()) {
    throw ValidationError("dilution_converse_sweep: empty n_list");
  }
  std::vector<DilutionOutcome> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    DilutionOutcome o;
    o.n = n;
    o.mode = DilutionMode::Converse;
    o.alpha_or_gamma = gamma;
    o.log_m = static_cast<double>(n) * rate;
    o.rate = rate;
    const ConverseBound bound = dilution_converse_bound(seq.spectrum_at(n), gamma, rate, n);
    // the truncation fidelity the protocol itself would reach at rank e^{nR}
    o.fidelity_lb = truncation_fidelity(seq.spectrum_at(n), o.log_m);
    o.converse_term1 = bound.term_projection;
    o.converse_term2 = bound.term_rate;
    o.converse_ub = bound.total;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace entspec
