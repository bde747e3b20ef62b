#include "entspec/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <limits>
#include <thread>

namespace entspec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t worker_count(std::size_t cells) {
  std::size_t workers = std::max<unsigned>(std::thread::hardware_concurrency(), 1);
  if (const char* env = std::getenv("ENTSPEC_WORKERS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) {
      workers = static_cast<std::size_t>(parsed);
    }
  }
  return std::min(workers, cells);
}

/// Order-preserving parallel map over an index range; results are assembled
/// by index so scheduling never changes the output.
template <typename F>
auto parallel_map(std::size_t count, F&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> results(count);
  const std::size_t workers = worker_count(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futs;
  futs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    futs.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        results[i] = fn(i);
      }
    }));
  }
  for (auto& f : futs) f.get();
  return results;
}

/// Prefix view of a descending class list: trace value at any threshold via
/// binary search, O(log classes) per gamma.
struct PrefixTails {
  std::vector<double> key;          // descending sort key: log_rho - log_omega
  std::vector<double> prefix_mass;  // cumulative rho mass
  std::vector<double> prefix_log_scaled;  // cumulative log sum of mult*omega

  // trace value = prefix_mass(J) - e^{n gamma} * scaled(J) over key >= n gamma
  double value_at(double n_gamma) const {
    const auto it = std::upper_bound(key.begin(), key.end(), n_gamma, std::greater<double>());
    const auto count = static_cast<std::size_t>(it - key.begin());
    if (count == 0) return 0.0;
    const double subtract = prefix_log_scaled[count - 1] == kNegInf
                                ? 0.0
                                : std::exp(n_gamma + prefix_log_scaled[count - 1]);
    return prefix_mass[count - 1] - subtract;
  }
};

PrefixTails prefix_tails_identity(const StructuredSpectrum& spec) {
  PrefixTails out;
  const std::size_t m = spec.class_count();
  out.key.resize(m);
  out.prefix_mass.resize(m);
  out.prefix_log_scaled.resize(m);
  CompensatedSum mass;
  double log_scaled = kNegInf;
  for (std::size_t i = 0; i < m; ++i) {
    out.key[i] = spec.log_eigenvalue(i);
    mass.add(spec.class_mass(i));
    log_scaled = log_add_exp(log_scaled, spec.log_multiplicity(i));
    out.prefix_mass[i] = mass.value();
    out.prefix_log_scaled[i] = log_scaled;
  }
  return out;
}

PrefixTails prefix_tails_pair(const PairedClasses& pair) {
  const std::size_t m = pair.log_mult.size();
  std::vector<std::size_t> order;
  order.reserve(m);
  std::vector<double> ratio(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double lr = pair.log_eig_rho[i];
    const double lo = pair.log_eig_omega[i];
    if (lr == kNegInf) continue;  // zero rho eigenvalue never enters the positive part
    ratio[i] = (lo == kNegInf) ? std::numeric_limits<double>::infinity() : lr - lo;
    order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ratio[a] > ratio[b]; });
  PrefixTails out;
  out.key.reserve(order.size());
  out.prefix_mass.reserve(order.size());
  out.prefix_log_scaled.reserve(order.size());
  CompensatedSum mass;
  double log_scaled = kNegInf;
  for (std::size_t idx : order) {
    out.key.push_back(ratio[idx]);
    mass.add(std::exp(pair.log_mult[idx] + pair.log_eig_rho[idx]));
    if (pair.log_eig_omega[idx] != kNegInf) {
      log_scaled = log_add_exp(log_scaled, pair.log_mult[idx] + pair.log_eig_omega[idx]);
    }
    out.prefix_mass.push_back(mass.value());
    out.prefix_log_scaled.push_back(log_scaled);
  }
  return out;
}

double clamp_trace_value(double v) {
  if (v < -kTraceValueSlack || v > 1.0 + kTraceValueSlack) {
    throw ValidationError("trace functional value " + std::to_string(v) + " outside [0,1]");
  }
  return std::clamp(v, 0.0, 1.0);
}

RateBracket extract_bracket(int n, const TraceCurve& curve, const GammaGrid& grid, double epsilon) {
  RateBracket b;
  b.n = n;
  b.gamma_hi = grid.max;
  b.hi_out_of_range = true;
  b.gamma_lo = grid.min;
  b.lo_out_of_range = true;
  for (const auto& pt : curve.points) {
    if (b.hi_out_of_range && pt.value <= epsilon) {
      b.gamma_hi = pt.gamma;
      b.hi_out_of_range = false;
    }
    if (pt.value >= 1.0 - epsilon) {
      b.gamma_lo = pt.gamma;
      b.lo_out_of_range = false;
    }
  }
  return b;
}

void check_estimator_inputs(const std::vector<int>& n_list, const GammaGrid& grid, double epsilon) {
  if (n_list.empty()) {
    throw ValidationError("n_list must be nonempty");
  }
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw ValidationError("epsilon must lie in (0, 0.5)");
  }
  grid.validate();
}

SpectralRateEstimate estimate_from_curves(const std::vector<int>& n_list, const GammaGrid& grid,
                                          double epsilon,
                                          const std::function<TraceCurve(int)>& curve_for_n) {
  SpectralRateEstimate est;
  est.epsilon = epsilon;
  std::vector<TraceCurve> curves =
      parallel_map(n_list.size(), [&](std::size_t i) { return curve_for_n(n_list[i]); });
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    est.per_n.push_back(extract_bracket(n_list[i], curves[i], grid, epsilon));
  }
  est.curves = std::move(curves);
  return est;
}

}  // namespace

void GammaGrid::validate() const {
  if (!(min < max)) {
    throw ValidationError("GammaGrid: min must be < max");
  }
  if (!(step > 0.0)) {
    throw ValidationError("GammaGrid: step must be positive");
  }
  if (point_count() > kGridPointCap) {
    throw ResourceCapError("GammaGrid: more than 1e6 points");
  }
}

std::size_t GammaGrid::point_count() const {
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

std::vector<double> GammaGrid::points() const {
  validate();
  std::vector<double> out(point_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = min + static_cast<double>(i) * step;
  }
  return out;
}

TraceCurve::TraceCurve(int n_, std::vector<TracePoint> pts) : n(n_), points(std::move(pts)) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].value = clamp_trace_value(points[i].value);
    if (i > 0) {
      if (points[i].gamma <= points[i - 1].gamma) {
        throw ValidationError("TraceCurve: gamma must be strictly increasing");
      }
      if (points[i].value > points[i - 1].value + kTraceValueSlack) {
        throw ValidationError("TraceCurve: trace functional must be nonincreasing in gamma");
      }
    }
  }
}

double pi_trace(const StructuredSpectrum& rho_n, double gamma, int n) {
  if (n < 1) {
    throw ValidationError("pi_trace: n must be >= 1");
  }
  return clamp_trace_value(tail_sum_log(rho_n, static_cast<double>(n) * gamma).excess);
}

double pi_trace(const PairedClasses& pair, double gamma, int n) {
  if (n != pair.n) {
    throw ValidationError("pi_trace: copy count does not match the realization");
  }
  const double ng = static_cast<double>(n) * gamma;
  CompensatedSum sum;
  for (std::size_t i = 0; i < pair.log_mult.size(); ++i) {
    const double lr = pair.log_eig_rho[i];
    const double lo = pair.log_eig_omega[i];
    if (lr == kNegInf) continue;
    const double lthr = lo == kNegInf ? kNegInf : ng + lo;
    if (lr >= lthr) {
      const double mass = std::exp(pair.log_mult[i] + lr);
      sum.add(lthr == kNegInf ? mass : mass * (-std::expm1(lthr - lr)));
    }
  }
  return clamp_trace_value(sum.value());
}

double positive_part_trace(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
  const double scale = solver.eigenvalues().cwiseAbs().maxCoeff();
  const double boundary = -kEigZeroBoundary * scale;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < op.dim(); ++i) {
    if (solver.eigenvalues()(i) >= boundary) {
      sum += solver.eigenvalues()(i);
    }
  }
  return sum;
}

double pi_trace(const DensityOperator& rho_n, const HermitianOperator& omega_n, double gamma, int n) {
  if (rho_n.dim() != omega_n.dim()) {
    throw ValidationError("pi_trace: dimension mismatch");
  }
  if (n < 1) {
    throw ValidationError("pi_trace: n must be >= 1");
  }
  const double ng = static_cast<double>(n) * gamma;
  if (std::abs(ng) > 700.0) {
    throw ValidationError("pi_trace (dense): |n*gamma| > 700 exceeds double range; "
                          "use the structured path");
  }
  const Matrix pi = rho_n.matrix() - std::exp(ng) * omega_n.matrix();
  return clamp_trace_value(positive_part_trace(HermitianOperator(pi)));
}

double conditional_pi_trace(const StructuredSpectrum& schmidt, double gamma, int n) {
  if (n < 1) {
    throw ValidationError("conditional_pi_trace: n must be >= 1");
  }
  const double ng = static_cast<double>(n) * gamma;
  // the candidate eigenvalue stays positive iff e^{-n gamma} rank > 1
  if (ng >= schmidt.log_total_count()) {
    return 0.0;
  }
  const std::size_t m = schmidt.class_count();
  std::vector<double> mass(m), thr(m);
  for (std::size_t i = 0; i < m; ++i) {
    mass[i] = schmidt.class_mass(i);
    thr[i] = std::exp(ng + schmidt.log_eigenvalue(i));
  }
  const auto g = [&](double lam) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      s += mass[i] / (lam + thr[i]);
    }
    return s;
  };
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 1.0 ? lo : hi) = mid;
  }
  return clamp_trace_value(std::max(0.5 * (lo + hi), 0.0));
}

double conditional_pi_trace(const PureBipartiteState& psi, double gamma, int n) {
  return conditional_pi_trace(StructuredSpectrum::from_values(schmidt_spectrum(psi).values()),
                              gamma, n);
}

double conditional_pi_trace(const DensityOperator& rho_ab, Eigen::Index dim_a, Eigen::Index dim_b,
                            double gamma, int n) {
  if (dim_a * dim_b != rho_ab.dim()) {
    throw ValidationError("conditional_pi_trace: dim mismatch");
  }
  const double ng = static_cast<double>(n) * gamma;
  if (std::abs(ng) > 700.0) {
    throw ValidationError("conditional_pi_trace (dense): |n*gamma| > 700");
  }
  const DensityOperator rho_b = partial_trace(rho_ab, dim_a, dim_b, Side::B);
  Matrix pi = rho_ab.matrix();
  const double scale = std::exp(ng);
  for (Eigen::Index i = 0; i < dim_a; ++i) {
    pi.block(i * dim_b, i * dim_b, dim_b, dim_b) -= scale * rho_b.matrix();
  }
  return clamp_trace_value(positive_part_trace(HermitianOperator(std::move(pi))));
}

SpectralRateEstimate estimate_divergence_rates(const StateSequence& rho, const StateSequence& omega,
                                               const std::vector<int>& n_list, const GammaGrid& grid,
                                               double epsilon) {
  check_estimator_inputs(n_list, grid, epsilon);
  const std::vector<double> gammas = grid.points();
  const bool structured = rho.structured_available() && omega.structured_available();
  return estimate_from_curves(n_list, grid, epsilon, [&](int n) {
    std::vector<TracePoint> pts(gammas.size());
    if (structured) {
      const PrefixTails tails = prefix_tails_pair(rho.realize_pair(omega, n));
      for (std::size_t i = 0; i < gammas.size(); ++i) {
        pts[i] = {gammas[i], clamp_trace_value(tails.value_at(n * gammas[i]))};
      }
    } else {
      const DensityOperator rho_n = rho.density_at(n);
      const HermitianOperator omega_n = omega.density_at(n).hermitian();
      for (std::size_t i = 0; i < gammas.size(); ++i) {
        pts[i] = {gammas[i], pi_trace(rho_n, omega_n, gammas[i], n)};
      }
    }
    return TraceCurve(n, std::move(pts));
  });
}

SpectralRateEstimate estimate_entropy_rates(const StateSequence& rho, const std::vector<int>& n_list,
                                            const GammaGrid& grid, double epsilon) {
  check_estimator_inputs(n_list, grid, epsilon);
  const std::vector<double> gammas = grid.points();
  return estimate_from_curves(n_list, grid, epsilon, [&](int n) {
    const PrefixTails tails = prefix_tails_identity(rho.spectrum_at(n));
    std::vector<TracePoint> pts(gammas.size());
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      pts[i] = {gammas[i], clamp_trace_value(tails.value_at(n * gammas[i]))};
    }
    return TraceCurve(n, std::move(pts));
  });
}

SpectralRateEstimate estimate_conditional_rates(const StateSequence& bipartite,
                                                const std::vector<int>& n_list, const GammaGrid& grid,
                                                double epsilon) {
  check_estimator_inputs(n_list, grid, epsilon);
  if (!bipartite.is_purified()) {
    throw ValidationError(
        "estimate_conditional_rates: sequence must realize bipartite pure states "
        "(purified); structured-only density sequences are unsupported");
  }
  const std::vector<double> gammas = grid.points();
  return estimate_from_curves(n_list, grid, epsilon, [&](int n) {
    const StructuredSpectrum schmidt = bipartite.spectrum_at(n);
    std::vector<TracePoint> pts(gammas.size());
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      pts[i] = {gammas[i], conditional_pi_trace(schmidt, gammas[i], n)};
    }
    return TraceCurve(n, std::move(pts));
  });
}

SpectralRateEstimate estimate_conditional_rates(const std::vector<BipartiteDensity>& states,
                                                const std::vector<int>& n_list, const GammaGrid& grid,
                                                double epsilon) {
  check_estimator_inputs(n_list, grid, epsilon);
  const std::vector<double> gammas = grid.points();
  return estimate_from_curves(n_list, grid, epsilon, [&](int n) {
    if (n < 1 || static_cast<std::size_t>(n) > states.size()) {
      throw ValidationError("estimate_conditional_rates: no state stored for n=" +
                            std::to_string(n));
    }
    const auto& s = states[static_cast<std::size_t>(n) - 1];
    std::vector<TracePoint> pts(gammas.size());
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      pts[i] = {gammas[i], conditional_pi_trace(s.state, s.dim_a, s.dim_b, gammas[i], n)};
    }
    return TraceCurve(n, std::move(pts));
  });
}

}  // namespace entspec
