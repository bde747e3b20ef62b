#include <catch_amalgamated.hpp>

#include <cmath>

#include "entspec/lemmas.hpp"
#include "entspec/random.hpp"

using namespace entspec;
using Catch::Approx;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("lemma worked instances", "[lemmas]") {
  SECTION("lemma 3: diag(0.7,0.3) vs I at gamma = ln 2") {
    const auto r = check_lemma3(DensityOperator(diag2(0.7, 0.3)), HermitianOperator::identity(2),
                                std::log(2.0), 1);
    REQUIRE(r.lhs == Approx(0.0).margin(1e-12));
    REQUIRE(r.rhs == Approx(0.5));
    REQUIRE(r.pass);
  }
  SECTION("lemma 1 attains equality at P = {A >= B}") {
    RandomSource rng(55);
    const HermitianOperator a = random_hermitian(rng, 4);
    const HermitianOperator b = random_hermitian(rng, 4);
    const auto r = check_lemma1(spectral_compare(a, b), a, b);
    REQUIRE(r.lhs == Approx(r.rhs).margin(1e-12));
    REQUIRE(r.pass);
  }
  SECTION("lemma 2 with the identity map is an equality") {
    RandomSource rng(56);
    const HermitianOperator a = random_hermitian(rng, 3);
    const HermitianOperator b = random_hermitian(rng, 3);
    const KrausMap identity_map(std::vector<Matrix>{Matrix::Identity(3, 3)});
    const auto r = check_lemma2(identity_map, a, b);
    REQUIRE(r.lhs == Approx(r.rhs).margin(1e-12));
    REQUIRE(r.pass);
  }
}

TEST_CASE("lemma suites hold on random instances", "[lemmas]") {
  for (int kind : {1, 2, 3}) {
    for (Eigen::Index dim : {2, 4, 6}) {
      const LemmaSuiteResult r = run_lemma_suite(kind, 60, dim, 1234);
      INFO("lemma " << kind << " dim " << dim << " worst margin " << r.worst_margin);
      REQUIRE(r.failures == 0);
    }
  }
}

TEST_CASE("lemma suite input validation", "[lemmas]") {
  REQUIRE_THROWS_AS(run_lemma_suite(4, 10, 3, 0), ValidationError);
  REQUIRE_THROWS_AS(run_lemma_suite(1, 0, 3, 0), ValidationError);
  REQUIRE_THROWS_AS(check_lemma3(DensityOperator(diag2(0.5, 0.5)),
                                 HermitianOperator::identity(3), 0.0, 1),
                    ValidationError);
}
