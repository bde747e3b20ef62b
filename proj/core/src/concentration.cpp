#include "entspec/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entspec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTieRelTol = 1e-12;
const double kLog2To63 = 63.0 * std::log(2.0);

/// Majorization of the post-measurement classes against uniform(M), checked
/// at class boundaries (the gap to the uniform prefix is piecewise linear,
/// so boundary checks suffice).
bool majorizes_uniform(const std::vector<double>& log_eig, const std::vector<double>& log_mult,
                       double log_m) {
  double log_count_prefix = kNegInf;
  CompensatedSum mass_prefix;
  for (std::size_t i = 0; i < log_eig.size(); ++i) {
    const double prev_count = log_count_prefix;
    log_count_prefix = log_add_exp(log_count_prefix, log_mult[i]);
    // end of class i: min(count, M) / M
    const double bound_end = std::min(1.0, std::exp(std::min(log_count_prefix - log_m, 0.0)));
    const double mass_before = mass_prefix.value();
    mass_prefix.add(std::exp(log_mult[i] + log_eig[i]));
    if (mass_prefix.value() > bound_end + 1e-10) {
      return false;
    }
    // interior kink where the cumulative count crosses M
    if (prev_count < log_m && log_count_prefix > log_m) {
      const double take = prev_count == kNegInf ? log_m : log_sub_exp(log_m, prev_count);
      const double mass_at_m = mass_before + std::exp(take + log_eig[i]);
      if (mass_at_m > 1.0 + 1e-10) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool nielsen_majorizes(std::span<const double> source, std::span<const double> target) {
  auto check = [](std::span<const double> v) {
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < -1e-12 || (i > 0 && v[i] > v[i - 1] + 1e-12)) {
        throw ValidationError("nielsen_majorizes: spectra must be descending and nonnegative");
      }
      sum += v[i];
    }
    if (std::abs(sum - 1.0) > kStructuredMassTol) {
      throw ValidationError("nielsen_majorizes: spectrum mass " + std::to_string(sum));
    }
  };
  check(source);
  check(target);
  double src_prefix = 0.0, tgt_prefix = 0.0;
  for (std::size_t k = 0; k < source.size(); ++k) {
    src_prefix += source[k];
    tgt_prefix += k < target.size() ? target[k] : 0.0;  // zero padding
    if (src_prefix > tgt_prefix + 1e-10) {
      return false;
    }
  }
  return true;
}

ConcentrationOutcome concentrate(const StructuredSpectrum& phi_spectrum, double gamma, int n) {
  if (n < 1) {
    throw ValidationError("concentrate: n must be >= 1");
  }
  const double log_threshold = -static_cast<double>(n) * gamma;
  // ties (relative 1e-12) are assigned to the failure projector
  const double log_fail_cut = log_threshold + std::log1p(-kTieRelTol);

  CompensatedSum fail_mass, success_mass;
  std::vector<double> post_log_eig, post_log_mult;
  for (std::size_t i = 0; i < phi_spectrum.class_count(); ++i) {
    const double le = phi_spectrum.log_eigenvalue(i);
    const double mass = phi_spectrum.class_mass(i);
    if (le >= log_fail_cut) {
      fail_mass.add(mass);
    } else {
      success_mass.add(mass);
      post_log_eig.push_back(le);
      post_log_mult.push_back(phi_spectrum.log_multiplicity(i));
    }
  }

  ConcentrationOutcome out;
  out.n = n;
  out.gamma = gamma;
  out.p_fail = std::clamp(fail_mass.value() + phi_spectrum.pruned_mass(), 0.0, 1.0);
  out.success_mass = std::clamp(success_mass.value(), 0.0, 1.0);
  if (out.success_mass <= 0.0) {
    throw ProtocolAbort("concentrate: measurement never succeeds (success mass 0)");
  }

  const double log_s = std::log(out.success_mass);
  const double log_m_raw = log_s + static_cast<double>(n) * gamma;
  if (log_m_raw < 0.0) {
    // success_mass * e^{n gamma} < 1 floors to zero
    throw ProtocolAbort("concentrate: M = 0, no maximally entangled output exists");
  }
  if (log_m_raw <= kLog2To63) {
    // relative nudge so an exactly-integer success_mass * e^{n gamma} is not
    // floored one rank down by rounding in exp()
    const double m_real = std::exp(log_m_raw) * (1.0 + 1e-12);
    const auto m = static_cast<std::uint64_t>(std::floor(m_real));
    if (m == 0) {
      throw ProtocolAbort("concentrate: M = 0, no maximally entangled output exists");
    }
    out.log_m = std::log(static_cast<double>(m));
    out.floor_exact = true;
  } else {
    out.log_m = log_m_raw;  // floor correction is below double resolution here
    out.floor_exact = false;
  }
  out.rate = out.log_m / static_cast<double>(n);
  if (std::abs(out.p_fail + out.success_mass - 1.0) > 1e-9) {
    throw ValidationError("concentrate: failure and success masses do not account for 1");
  }
  if (out.rate > gamma + 1e-9) {
    throw ValidationError("concentrate: rate exceeds gamma, M bookkeeping is broken");
  }

  // renormalized post-measurement spectrum, head only
  const double ls = log_s;
  std::size_t taken = 0;
  CompensatedSum head_mass;
  for (std::size_t i = 0; i < post_log_eig.size() && taken < kPostSpectrumHead; ++i) {
    const double value = std::exp(post_log_eig[i] - ls);
    const double count_d = std::exp(post_log_mult[i]);
    const auto take =
        static_cast<std::size_t>(std::min(count_d, static_cast<double>(kPostSpectrumHead - taken)));
    for (std::size_t c = 0; c < std::max<std::size_t>(take, 1) && taken < kPostSpectrumHead; ++c) {
      out.post_spectrum_head.push_back(value);
      head_mass.add(value);
      ++taken;
    }
  }
  out.post_head_mass = head_mass.value();

  std::vector<double> post_norm_eig(post_log_eig.size());
  for (std::size_t i = 0; i < post_log_eig.size(); ++i) {
    post_norm_eig[i] = post_log_eig[i] - ls;
  }
  out.majorization_ok = majorizes_uniform(post_norm_eig, post_log_mult, out.log_m);

  if (out.p_fail < 0.5) {
    out.rate_lower_bound = rate_lower_bound(gamma, n, out.p_fail);
  }
  return out;
}

ConcentrationOutcome concentrate(const SchmidtSpectrum& phi_spectrum, double gamma, int n) {
  return concentrate(StructuredSpectrum::from_values(phi_spectrum.values()), gamma, n);
}

std::vector<ConcentrationOutcome> concentration_sweep(const StateSequence& seq, double gamma,
                                                      const std::vector<int>& n_list) {
  if (n_list.empty()) {
    throw ValidationError("concentration_sweep: empty n_list");
  }
  std::vector<ConcentrationOutcome> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    out.push_back(concentrate(seq.spectrum_at(n), gamma, n));
  }
  return out;
}

double rate_lower_bound(double gamma, int n, double eps_n) {
  if (n < 1) {
    throw ValidationError("rate_lower_bound: n must be >= 1");
  }
  if (!(eps_n >= 0.0 && eps_n < 0.5)) {
    throw ValidationError("rate_lower_bound: requires eps_n in [0, 1/2)");
  }
  const double ng = static_cast<double>(n) * gamma;
  return gamma - (2.0 / n) * (eps_n + std::exp(-ng));
}

}  // namespace entspec
