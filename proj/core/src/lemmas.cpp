#include "entspec/lemmas.hpp"

#include <algorithm>
#include <cmath>

#include "entspec/random.hpp"

namespace entspec {

namespace {

double real_trace(const Matrix& m) { return m.trace().real(); }

LemmaReport make_report(double lhs, double rhs) {
  LemmaReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.pass = lhs <= rhs + kLemmaSlack;
  return r;
}

}  // namespace

LemmaReport check_lemma1(const HermitianOperator& p, const HermitianOperator& a,
                         const HermitianOperator& b) {
  if (p.dim() != a.dim() || a.dim() != b.dim()) {
    throw ValidationError("check_lemma1: dimension mismatch");
  }
  const Matrix diff = a.matrix() - b.matrix();
  const double lhs = real_trace(p.matrix() * diff);
  const double rhs = real_trace(spectral_compare(a, b).matrix() * diff);
  return make_report(lhs, rhs);
}

LemmaReport check_lemma2(const KrausMap& t, const HermitianOperator& a, const HermitianOperator& b) {
  if (t.dim() != a.dim() || a.dim() != b.dim()) {
    throw ValidationError("check_lemma2: dimension mismatch");
  }
  const HermitianOperator ta(t.apply(a.matrix()));
  const HermitianOperator tb(t.apply(b.matrix()));
  const double lhs = real_trace(spectral_compare(ta, tb).matrix() * (ta.matrix() - tb.matrix()));
  const double rhs =
      real_trace(spectral_compare(a, b).matrix() * (a.matrix() - b.matrix()));
  return make_report(lhs, rhs);
}

LemmaReport check_lemma3(const DensityOperator& rho, const HermitianOperator& omega, double gamma,
                         int n) {
  if (rho.dim() != omega.dim()) {
    throw ValidationError("check_lemma3: dimension mismatch");
  }
  if (n < 1) {
    throw ValidationError("check_lemma3: n must be >= 1");
  }
  const double ng = static_cast<double>(n) * gamma;
  if (std::abs(ng) > 700.0) {
    throw ValidationError("check_lemma3: |n*gamma| > 700");
  }
  const HermitianOperator scaled(Matrix(std::exp(ng) * omega.matrix()));
  const HermitianOperator proj = spectral_compare(rho.hermitian(), scaled);
  const double lhs = real_trace(proj.matrix() * omega.matrix());
  return make_report(lhs, std::exp(-ng));
}

LemmaSuiteResult run_lemma_suite(int kind, int trials, Eigen::Index dim, std::uint64_t seed) {
  if (kind < 1 || kind > 3) {
    throw ValidationError("run_lemma_suite: kind must be 1, 2, or 3");
  }
  if (trials < 1) {
    throw ValidationError("run_lemma_suite: trials must be >= 1");
  }
  RandomSource rng(seed + static_cast<std::uint64_t>(kind) * 0x9e3779b9ULL);
  LemmaSuiteResult result;
  result.kind = kind;
  result.trials = trials;
  for (int t = 0; t < trials; ++t) {
    LemmaReport report;
    switch (kind) {
      case 1: {
        const HermitianOperator a = random_hermitian(rng, dim);
        const HermitianOperator b = random_hermitian(rng, dim);
        const HermitianOperator p = random_contraction(rng, dim);
        report = check_lemma1(p, a, b);
        break;
      }
      case 2: {
        const HermitianOperator a = random_hermitian(rng, dim);
        const HermitianOperator b = random_hermitian(rng, dim);
        const KrausMap map = random_kraus_map(rng, dim);
        report = check_lemma2(map, a, b);
        break;
      }
      default: {
        const DensityOperator rho = random_density(rng, dim);
        // omega PSD with O(1) trace
        const DensityOperator base = random_density(rng, dim);
        const HermitianOperator omega(Matrix((0.1 + 1.9 * rng.uniform()) * base.matrix()));
        const double gamma = -2.0 + 4.0 * rng.uniform();
        const int n = 1 + static_cast<int>(rng.integer(5));
        report = check_lemma3(rho, omega, gamma, n);
        break;
      }
    }
    if (!report.pass) {
      ++result.failures;
    }
    result.worst_margin = std::min(result.worst_margin, report.margin);
  }
  return result;
}

}  // namespace entspec
