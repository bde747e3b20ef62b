#include <catch_amalgamated.hpp>

#include <cmath>

#include "entspec/dilution.hpp"
#include "oracle.hpp"

using namespace entspec;
using Catch::Approx;

namespace {
const double kH34 = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
}

TEST_CASE("truncation_fidelity", "[dilution]") {
  SECTION("uniform spectrum, half rank") {
    std::vector<double> uniform(16, 1.0 / 16.0);
    REQUIRE(truncation_fidelity(SchmidtSpectrum(uniform), 8) == Approx(0.25));
  }
  SECTION("full rank reaches exactly 1") {
    REQUIRE(truncation_fidelity(SchmidtSpectrum({0.6, 0.4}), 2) == 1.0);
    REQUIRE(truncation_fidelity(SchmidtSpectrum({0.6, 0.4}), 5) == 1.0);
  }
  SECTION("top-2 of the p=0.75 two-copy spectrum") {
    REQUIRE(truncation_fidelity(SchmidtSpectrum({0.5625, 0.1875, 0.1875, 0.0625}), 2) ==
            Approx(0.5625));
  }
  SECTION("M = 0 rejected") {
    REQUIRE_THROWS_AS(truncation_fidelity(SchmidtSpectrum({1.0}), 0), ValidationError);
  }
  SECTION("structured log-M variant agrees with the flat version") {
    const StructuredSpectrum spec = StateSequence::iid({0.75, 0.25}).spectrum_at(6);
    auto eigs = oracle::enumerate_product_eigs({0.75, 0.25}, 6);
    std::sort(eigs.begin(), eigs.end(), std::greater<>());
    const SchmidtSpectrum flat(eigs);
    for (std::uint64_t m : {1ULL, 3ULL, 17ULL, 40ULL, 64ULL}) {
      REQUIRE(truncation_fidelity(spec, std::log(static_cast<double>(m))) ==
              Approx(truncation_fidelity(flat, m)).margin(1e-10));
    }
  }
  SECTION("nondecreasing in M") {
    const StructuredSpectrum spec = StateSequence::iid({0.6, 0.4}).spectrum_at(10);
    double prev = 0.0;
    for (double log_m = 0.0; log_m < 8.0; log_m += 0.25) {
      const double f = truncation_fidelity(spec, log_m);
      REQUIRE(f >= prev - 1e-12);
      prev = f;
    }
    REQUIRE(prev == 1.0);
  }
}

TEST_CASE("coding_fidelity", "[dilution]") {
  const StateSequence seq = StateSequence::iid({0.75, 0.25});
  SECTION("huge alpha keeps everything") {
    REQUIRE(coding_fidelity(seq.spectrum_at(20), 5.0, 20).fidelity == Approx(1.0));
  }
  SECTION("uniform qubit below ln 2 keeps nothing") {
    const StructuredSpectrum spec = StateSequence::iid({0.5, 0.5}).spectrum_at(30);
    REQUIRE(coding_fidelity(spec, 0.5, 30).fidelity == 0.0);
  }
  SECTION("alpha = H + 0.05 at n = 200 against the binomial oracle") {
    const double alpha = kH34 + 0.05;
    const CodingFidelity out = coding_fidelity(seq.spectrum_at(200), alpha, 200);
    REQUIRE(out.fidelity ==
            Approx(oracle::qubit_tail_mass(0.75, 200, -200.0 * alpha)).margin(1e-9));
    REQUIRE(out.fidelity == Approx(0.937528).margin(1e-6));
    // rank bound Tr[{rho >= e^{-n alpha}}] <= e^{n alpha}, exact count
    REQUIRE(out.rank_count.has_value());
    REQUIRE(out.log_rank_count <= 200.0 * alpha);
  }
  SECTION("nondecreasing in alpha") {
    const StructuredSpectrum spec = seq.spectrum_at(60);
    double prev = 0.0;
    for (double alpha = 0.3; alpha < 1.0; alpha += 0.02) {
      const double f = coding_fidelity(spec, alpha, 60).fidelity;
      REQUIRE(f >= prev - 1e-12);
      prev = f;
    }
  }
  SECTION("projector count bound over many spectra") {
    for (int n : {10, 50, 120}) {
      const StructuredSpectrum spec = seq.spectrum_at(n);
      for (double alpha : {0.3, 0.5, 0.6, 0.9}) {
        const CodingFidelity out = coding_fidelity(spec, alpha, n);
        REQUIRE(out.log_rank_count <= n * alpha * (1.0 + 1e-12) + 1e-12);
      }
    }
  }
}

TEST_CASE("dilution_converse_bound", "[dilution]") {
  SECTION("uniform qubit hand-check: bound = e^{-1}") {
    const StructuredSpectrum spec = StateSequence::iid({0.5, 0.5}).spectrum_at(10);
    const ConverseBound b = dilution_converse_bound(spec, 0.6, 0.5, 10);
    REQUIRE(b.term_projection == 0.0);  // 2^{-10} < e^{-6}
    REQUIRE(b.term_rate == Approx(std::exp(-1.0)).margin(1e-9));
    REQUIRE(b.total == Approx(0.367879441).margin(1e-9));
  }
  SECTION("R = gamma is vacuous") {
    const StructuredSpectrum spec = StateSequence::iid({0.75, 0.25}).spectrum_at(10);
    const ConverseBound b = dilution_converse_bound(spec, 0.4, 0.4, 10);
    REQUIRE(b.term_rate == Approx(1.0));
    REQUIRE(b.total >= 1.0);
  }
  SECTION("gamma far above the entropy is vacuous through the first term") {
    const StructuredSpectrum spec = StateSequence::iid({0.75, 0.25}).spectrum_at(120);
    const ConverseBound b = dilution_converse_bound(spec, kH34 + 0.4, 0.1, 120);
    REQUIRE(b.term_projection > 0.99);
  }
}

TEST_CASE("dilution sweeps", "[dilution]") {
  const StateSequence seq = StateSequence::iid({0.75, 0.25});
  SECTION("achievable fidelities rise toward 1") {
    const auto outcomes = dilution_achievable_sweep(seq, kH34, 0.05, {50, 100, 200});
    REQUIRE(outcomes[0].fidelity_lb < outcomes[1].fidelity_lb);
    REQUIRE(outcomes[1].fidelity_lb < outcomes[2].fidelity_lb);
    REQUIRE(outcomes[2].fidelity_lb == Approx(0.937528).margin(1e-6));
    for (const auto& o : outcomes) {
      REQUIRE(o.mode == DilutionMode::Achievable);
      REQUIRE(o.rate >= kH34 + 0.05 - 1e-9);
      REQUIRE(o.fidelity_lb <= 1.0 + 1e-9);
    }
  }
  SECTION("converse bound vanishes below the entropy rate") {
    const auto outcomes =
        dilution_converse_sweep(seq, kH34 - 0.1, kH34 - 0.2, {50, 100, 200});
    REQUIRE(*outcomes[0].converse_ub > *outcomes[1].converse_ub);
    REQUIRE(*outcomes[1].converse_ub > *outcomes[2].converse_ub);
    REQUIRE(*outcomes[2].converse_ub < 0.1);
    for (const auto& o : outcomes) {
      REQUIRE(o.fidelity_lb <= *o.converse_ub + 1e-9);  // protocol never beats the bound
    }
  }
  SECTION("achievable above and converse below cross over n") {
    const auto up = dilution_achievable_sweep(seq, kH34, 0.1, {50, 100, 200});
    const auto down = dilution_converse_sweep(seq, kH34 - 0.05, kH34 - 0.1, {50, 100, 200});
    REQUIRE(up.back().fidelity_lb > *down.back().converse_ub);
    REQUIRE(up.front().fidelity_lb < up.back().fidelity_lb);
    REQUIRE(*down.front().converse_ub > *down.back().converse_ub);
  }
  SECTION("mixture converse stays pinned near t: the cost-side signature") {
    const StateSequence mix = StateSequence::mixture({{0.9, 0.1}, {0.5, 0.5}, 0.5});
    const double rate = 0.45;  // between S(sigma) and S(omega)
    const auto outcomes = dilution_converse_sweep(mix, rate + 0.05, rate, {200});
    REQUIRE(*outcomes[0].converse_term1 == Approx(0.5).margin(0.01));
    REQUIRE(*outcomes[0].converse_ub < 0.52);
    REQUIRE(*outcomes[0].converse_ub ==
            Approx(oracle::mixture_tail_excess(0.9, 0.5, 0.5, 200, -200.0 * (rate + 0.05)) +
                   std::exp(-200.0 * 0.05))
                .margin(1e-9));
  }
}
