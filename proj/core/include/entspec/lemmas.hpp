#pragma once

#include <cstdint>

#include "entspec/operators.hpp"

namespace entspec {

inline constexpr double kLemmaSlack = 1e-9;

struct LemmaReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;    // lhs <= rhs + kLemmaSlack
};

/// Tr[P(A-B)] <= Tr[{A >= B}(A-B)] for 0 <= P <= I.
LemmaReport check_lemma1(const HermitianOperator& p, const HermitianOperator& a,
                         const HermitianOperator& b);

/// Tr[{T(A) >= T(B)} T(A-B)] <= Tr[{A >= B}(A-B)] for CPTP T.
LemmaReport check_lemma2(const KrausMap& t, const HermitianOperator& a, const HermitianOperator& b);

/// Tr[{rho >= e^{n gamma} omega} omega] <= e^{-n gamma}.
LemmaReport check_lemma3(const DensityOperator& rho, const HermitianOperator& omega, double gamma,
                         int n);

struct LemmaSuiteResult {
  int kind = 0;
  int trials = 0;
  int failures = 0;
  double worst_margin = 0.0;  // most negative margin seen (0 if all comfortable)
};

/// Seeded random-instance suite for one lemma at the given dimension.
LemmaSuiteResult run_lemma_suite(int kind, int trials, Eigen::Index dim, std::uint64_t seed);

}  // namespace entspec
