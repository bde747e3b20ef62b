#include <catch_amalgamated.hpp>

#include <cmath>

#include "entspec/lemmas.hpp"
#include "entspec/random.hpp"
#include "entspec/rates.hpp"
#include "oracle.hpp"

using namespace entspec;
using Catch::Approx;

namespace {

const double kH34 = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));  // 0.562335...

StructuredSpectrum qubit_power(double p, int n) {
  return StateSequence::iid({p, 1.0 - p}).spectrum_at(n);
}

}  // namespace

TEST_CASE("pi_trace worked examples", "[rates]") {
  SECTION("diag(0.7,0.3) against I at threshold 0.5") {
    const double f = pi_trace(StructuredSpectrum::from_values(std::vector<double>{0.7, 0.3}),
                              std::log(0.5), 1);
    REQUIRE(f == Approx(0.2));
  }
  SECTION("gamma >= 0 gives zero") {
    for (double gamma : {0.0, 0.3, 2.0}) {
      REQUIRE(pi_trace(qubit_power(0.7, 1), gamma, 1) <= 1e-15);
      // pure state at the boundary gamma = 0: eigenvalue 1 - 1 = 0
      REQUIRE(pi_trace(StructuredSpectrum::from_values(std::vector<double>{1.0}), gamma, 1) <=
              1e-15);
    }
  }
  SECTION("two copies of diag(0.75,0.25) at threshold 0.2") {
    const double gamma = std::log(0.2) / 2.0;
    REQUIRE(pi_trace(qubit_power(0.75, 2), gamma, 2) == Approx(0.3625));
  }
}

TEST_CASE("structured and dense pi_trace agree", "[rates]") {
  SECTION("iid qubit vs identity, n <= 8") {
    const StateSequence seq = StateSequence::iid({0.75, 0.25});
    for (int n : {1, 3, 6, 8}) {
      const StructuredSpectrum spec = seq.spectrum_at(n);
      const DensityOperator dense = seq.density_at(n);
      const HermitianOperator identity = HermitianOperator::identity(dense.dim());
      for (double gamma : {-1.2, -0.75, -0.56, -0.3, 0.05}) {
        REQUIRE(pi_trace(spec, gamma, n) ==
                Approx(pi_trace(dense, identity, gamma, n)).margin(1e-9));
      }
    }
  }
  SECTION("pair realization vs dense difference, d=3") {
    const StateSequence rho = StateSequence::iid({0.5, 0.3, 0.2});
    const StateSequence omega = StateSequence::iid({0.6, 0.25, 0.15});
    for (int n : {1, 2, 4}) {
      const PairedClasses pair = rho.realize_pair(omega, n);
      const DensityOperator rd = rho.density_at(n);
      const HermitianOperator od = omega.density_at(n).hermitian();
      for (double gamma : {-0.5, -0.1, 0.0, 0.08, 0.4}) {
        REQUIRE(pi_trace(pair, gamma, n) == Approx(pi_trace(rd, od, gamma, n)).margin(1e-9));
      }
    }
  }
  SECTION("dense path vs raw oracle eigensolve") {
    RandomSource rng(77);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityOperator rho = random_density(rng, 4);
      const DensityOperator omega = random_density(rng, 4);
      const double gamma = -1.0 + 2.0 * rng.uniform();
      REQUIRE(pi_trace(rho, omega.hermitian(), gamma, 2) ==
              Approx(oracle::dense_pi_trace(rho.matrix(), omega.matrix(), gamma, 2))
                  .margin(1e-10));
    }
  }
  SECTION("structured path vs binomial oracle at n = 200") {
    const StructuredSpectrum spec = qubit_power(0.75, 200);
    for (double gamma : {-0.75, -0.6, -0.562, -0.5, -0.4}) {
      REQUIRE(pi_trace(spec, gamma, 200) ==
              Approx(oracle::qubit_pi_trace(0.75, 200, gamma)).margin(1e-9));
    }
  }
}

TEST_CASE("trace curves are monotone and bracketed", "[rates]") {
  const GammaGrid grid{-2.0, 0.5, 0.01};
  const auto est = estimate_entropy_rates(StateSequence::iid({0.6, 0.4}), {1, 5, 25}, grid, 0.05);
  for (const auto& curve : est.curves) {
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      REQUIRE(curve.points[i].value <= curve.points[i - 1].value + 1e-9);
      REQUIRE(curve.points[i].value >= -1e-9);
      REQUIRE(curve.points[i].value <= 1.0 + 1e-9);
    }
  }
  for (const auto& b : est.per_n) {
    REQUIRE(b.gamma_lo <= b.gamma_hi + 1e-12);
  }
}

TEST_CASE("estimate_divergence_rates", "[rates]") {
  SECTION("rho = omega brackets straddle zero") {
    const StateSequence seq = StateSequence::iid({0.75, 0.25});
    const GammaGrid grid{-2.0, 1.0, 0.005};
    const auto est = estimate_divergence_rates(seq, seq, {10, 40}, grid, 0.01);
    for (const auto& b : est.per_n) {
      REQUIRE_FALSE(b.hi_out_of_range);
      REQUIRE_FALSE(b.lo_out_of_range);
      REQUIRE(b.gamma_hi <= 1e-12);                      // trace hits 0 at gamma = 0 already
      REQUIRE(b.gamma_lo <= 0.0);
      REQUIRE(b.gamma_lo >= std::log(0.01) / b.n - 0.005 - 1e-12);
      REQUIRE(b.gamma_hi >= std::log(1.0 - 0.01) / b.n - 0.005 - 1e-12);
    }
  }
  SECTION("iid (0.75,0.25) vs identity sequence at n=200") {
    const auto est = estimate_divergence_rates(StateSequence::iid({0.75, 0.25}),
                                               StateSequence::iid({0.5, 0.5}), {200},
                                               GammaGrid{-2.5, 0.5, 0.005}, 0.01);
    // D(rho || I/2) transition sits at log2 - H; against the *unnormalized*
    // identity it would sit at -H, and omega here is the density I/2,
    // so the bracket shifts by exactly log 2
    const double center = std::log(2.0) - kH34;
    REQUIRE(est.per_n[0].gamma_lo <= center);
    REQUIRE(est.per_n[0].gamma_hi >= center);
    REQUIRE(est.per_n[0].gamma_hi - est.per_n[0].gamma_lo < 0.25);
  }
  SECTION("out-of-range flags instead of silent clamping") {
    // transition near -H is far outside this grid
    const auto est = estimate_entropy_rates(StateSequence::iid({0.75, 0.25}), {200},
                                            GammaGrid{1.0, 2.0, 0.01}, 0.01);
    REQUIRE(est.per_n[0].hi_out_of_range == false);  // trace is 0 on the whole grid
    REQUIRE(est.per_n[0].lo_out_of_range == true);
    REQUIRE(est.per_n[0].gamma_lo == Approx(1.0));
  }
  SECTION("empty n_list / bad epsilon / degenerate grid rejected") {
    const StateSequence seq = StateSequence::iid({0.5, 0.5});
    REQUIRE_THROWS_AS(estimate_entropy_rates(seq, {}, GammaGrid{}, 0.01), ValidationError);
    REQUIRE_THROWS_AS(estimate_entropy_rates(seq, {4}, GammaGrid{}, 0.7), ValidationError);
    REQUIRE_THROWS_AS(estimate_entropy_rates(seq, {4}, GammaGrid{1.0, -1.0, 0.005}, 0.01),
                      ValidationError);
    REQUIRE_THROWS_AS(estimate_entropy_rates(seq, {4}, GammaGrid{0.0, 1.0, 1e-9}, 0.01),
                      ResourceCapError);
  }
}

TEST_CASE("estimate_entropy_rates worked sequences", "[rates]") {
  SECTION("uniform qubit: closed-form bracket ends") {
    const GammaGrid grid{-2.5, 0.5, 0.005};
    const auto est = estimate_entropy_rates(StateSequence::iid({0.5, 0.5}), {50, 200}, grid, 0.01);
    for (const auto& b : est.per_n) {
      // S_inf end: trace falls below eps one step past -ln2 + ln(1-eps)/n
      REQUIRE(inf_entropy_estimate(b) == Approx(std::log(2.0)).margin(0.0051));
      // S_sup end converges like ln2 + ln(1/eps)/n
      const double expected = std::log(2.0) + std::log(1.0 / 0.01) / b.n;
      REQUIRE(sup_entropy_estimate(b) == Approx(expected).margin(0.0051));
    }
  }
  SECTION("pure sequence: both estimates 0") {
    const auto est = estimate_entropy_rates(StateSequence::iid({1.0}), {5, 50},
                                            GammaGrid{-2.5, 0.5, 0.005}, 0.01);
    for (const auto& b : est.per_n) {
      REQUIRE(std::abs(inf_entropy_estimate(b)) <= 0.0051);
      REQUIRE(std::abs(sup_entropy_estimate(b)) <= std::log(100.0) / b.n + 0.0051);
    }
  }
  SECTION("iid (0.75,0.25) at n=200 matches the binomial oracle brackets") {
    const GammaGrid grid{-2.5, 0.5, 0.005};
    const auto est = estimate_entropy_rates(StateSequence::iid({0.75, 0.25}), {200}, grid, 0.01);
    const auto expected = oracle::bracket_from(
        [&](double g) { return oracle::qubit_pi_trace(0.75, 200, g); }, grid.min, grid.max,
        grid.step, 0.01);
    REQUIRE(est.per_n[0].gamma_lo == Approx(expected.gamma_lo).margin(1e-12));
    REQUIRE(est.per_n[0].gamma_hi == Approx(expected.gamma_hi).margin(1e-12));
    // the transition brackets the closed-form entropy
    REQUIRE(inf_entropy_estimate(est.per_n[0]) < kH34);
    REQUIRE(sup_entropy_estimate(est.per_n[0]) > kH34);
  }
  SECTION("mixture at n=200, eps=0.1: branch entropies") {
    const auto est =
        estimate_entropy_rates(StateSequence::mixture({{0.9, 0.1}, {0.5, 0.5}, 0.5}), {200},
                               GammaGrid{-2.5, 0.5, 0.005}, 0.1);
    const auto expected = oracle::bracket_from(
        [&](double g) { return oracle::mixture_pi_trace(0.9, 0.5, 0.5, 200, g); }, -2.5, 0.5,
        0.005, 0.1);
    REQUIRE(est.per_n[0].gamma_lo == Approx(expected.gamma_lo).margin(1e-12));
    REQUIRE(est.per_n[0].gamma_hi == Approx(expected.gamma_hi).margin(1e-12));
    REQUIRE(inf_entropy_estimate(est.per_n[0]) == Approx(0.325083).margin(0.05));
    REQUIRE(sup_entropy_estimate(est.per_n[0]) == Approx(0.693147).margin(0.05));
  }
}

TEST_CASE("conditional trace functional", "[rates]") {
  SECTION("secular path agrees with the dense joint eigensolve") {
    const StateSequence seq = StateSequence::iid({0.75, 0.25}).purified();
    for (int n : {1, 2, 3}) {
      const PureBipartiteState psi = seq.pure_state_at(n);
      for (double gamma : {-2.0, -0.5, 0.0, 0.3, 0.56, 0.69, 1.0}) {
        REQUIRE(conditional_pi_trace(psi, gamma, n) ==
                Approx(oracle::dense_conditional_pi_trace(psi.amplitudes(), gamma, n))
                    .margin(1e-9));
      }
    }
  }
  SECTION("secular path agrees with the dense overload on random pure states") {
    RandomSource rng(4242);
    for (int trial = 0; trial < 8; ++trial) {
      const PureBipartiteState psi = random_pure_state(rng, 3, 4);
      const double gamma = -1.5 + 2.5 * rng.uniform();
      const double via_pure = conditional_pi_trace(psi, gamma, 1);
      const double via_dense = conditional_pi_trace(psi.joint_density(), 3, 4, gamma, 1);
      REQUIRE(via_pure == Approx(via_dense).margin(1e-9));
    }
  }
  SECTION("collapse point sits at log d for full-support spectra") {
    const StructuredSpectrum schmidt = qubit_power(0.75, 6);
    REQUIRE(conditional_pi_trace(schmidt, std::log(2.0) + 1e-6, 6) == 0.0);
    REQUIRE(conditional_pi_trace(schmidt, std::log(2.0) - 0.01, 6) > 0.0);
  }
}

TEST_CASE("estimate_conditional_rates", "[rates]") {
  const GammaGrid grid{-6.0, 2.0, 0.01};
  SECTION("maximally entangled qubits: -Ssup(A|B) estimate approaches log 2") {
    const auto est = estimate_conditional_rates(StateSequence::iid({0.5, 0.5}).purified(),
                                                {2, 4, 8}, grid, 0.01);
    // the trace functional is 1 - e^{n(gamma - ln2)} here, so gamma_lo climbs
    // toward log 2 like ln(eps)/n and gamma_hi sits at log 2 immediately
    for (const auto& b : est.per_n) {
      REQUIRE(b.gamma_lo == Approx(std::log(2.0) - std::log(100.0) / b.n).margin(0.011));
      REQUIRE(b.gamma_hi == Approx(std::log(2.0)).margin(0.011));
    }
    REQUIRE(est.per_n.front().gamma_lo < est.per_n.back().gamma_lo);
  }
  SECTION("product pure sequence: conditional rate near 0") {
    const auto est =
        estimate_conditional_rates(StateSequence::iid({1.0}).purified(), {4, 8}, grid, 0.01);
    for (const auto& b : est.per_n) {
      // single Schmidt coefficient: trace jumps 1 -> 0 at gamma = 0
      REQUIRE(b.gamma_hi == Approx(0.0).margin(0.011));
      REQUIRE(b.gamma_lo == Approx(-std::log(100.0) / b.n).margin(0.011));
    }
  }
  SECTION("pure-state identity: conditional bracket overlaps S_inf(B) bracket at n <= 8") {
    const StateSequence seq = StateSequence::iid({0.75, 0.25});
    const auto cond = estimate_conditional_rates(seq.purified(), {1, 2, 3, 4, 5, 6, 7, 8}, grid, 0.01);
    const auto marg = estimate_entropy_rates(seq, {1, 2, 3, 4, 5, 6, 7, 8}, grid, 0.01);
    for (std::size_t i = 0; i < cond.per_n.size(); ++i) {
      const double lo1 = cond.per_n[i].gamma_lo;
      const double hi1 = cond.per_n[i].gamma_hi;
      const double lo2 = inf_entropy_estimate(marg.per_n[i]);   // -gamma_hi
      const double hi2 = sup_entropy_estimate(marg.per_n[i]);   // -gamma_lo
      REQUIRE(std::max(lo1, lo2) <= std::min(hi1, hi2));
    }
  }
  SECTION("structured-only sequences rejected") {
    REQUIRE_THROWS_AS(
        estimate_conditional_rates(StateSequence::iid({0.5, 0.5}), {2}, grid, 0.01),
        ValidationError);
  }
}

TEST_CASE("dense-list sequences go through the dense estimator path", "[rates]") {
  // non-commuting pair: only the explicit dense route applies
  RandomSource rng(606);
  std::vector<DensityOperator> rhos, omegas;
  for (int n = 1; n <= 2; ++n) {
    rhos.push_back(random_density(rng, 4));
    omegas.push_back(random_density(rng, 4));
  }
  const StateSequence rho = StateSequence::dense_list(rhos);
  const StateSequence omega = StateSequence::dense_list(omegas);
  const GammaGrid grid{-1.0, 1.0, 0.05};
  const auto est = estimate_divergence_rates(rho, omega, {1, 2}, grid, 0.05);
  for (std::size_t i = 0; i < est.curves.size(); ++i) {
    const int n = est.curves[i].n;
    for (const auto& pt : est.curves[i].points) {
      const double expected = oracle::dense_pi_trace(
          rhos[static_cast<std::size_t>(n - 1)].matrix(),
          omegas[static_cast<std::size_t>(n - 1)].matrix(), pt.gamma, n);
      REQUIRE(pt.value == Approx(std::clamp(expected, 0.0, 1.0)).margin(1e-9));
    }
  }
}

TEST_CASE("finite-n data processing under CPTP maps", "[rates][properties]") {
  RandomSource rng(909);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng.integer(3));
    const DensityOperator rho = random_density(rng, dim);
    const DensityOperator omega = random_density(rng, dim);
    const KrausMap t = random_kraus_map(rng, dim);
    const double gamma = -1.0 + 2.0 * rng.uniform();
    const int n = 1 + static_cast<int>(rng.integer(3));
    const double before = pi_trace(rho, omega.hermitian(), gamma, n);
    const double after = pi_trace(DensityOperator(t.apply(rho.matrix())),
                                  HermitianOperator(t.apply(omega.matrix())), gamma, n);
    REQUIRE(after <= before + 1e-9);
  }
}

TEST_CASE("locc maps never increase the conditional trace functional", "[rates][properties]") {
  // Lemma 2 applied to (phi, I (x) Tr_A phi): the one-way LOCC form maps
  // I (x) omega^B to I (x) sigma^B, so both sides stay in conditional form.
  RandomSource rng(321);
  for (int trial = 0; trial < 15; ++trial) {
    const PureBipartiteState psi = random_pure_state(rng, 2, 2);
    const LoccMap locc = random_locc_map(rng, 2, 2);
    const DensityOperator mapped(locc.apply(psi.joint_density().matrix()));
    const double gamma = -1.0 + 1.8 * rng.uniform();
    const double before = conditional_pi_trace(psi, gamma, 1);
    const double after = conditional_pi_trace(mapped, 2, 2, gamma, 1);
    REQUIRE(after <= before + 1e-9);
  }
}

