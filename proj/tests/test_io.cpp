#include <catch_amalgamated.hpp>

#include <cmath>

#include "entspec/io.hpp"
#include "entspec/random.hpp"

using namespace entspec;
using Catch::Approx;

TEST_CASE("sequence specs parse from JSON", "[io]") {
  SECTION("iid") {
    const StateSequence seq = parse_sequence_spec(Json::parse(R"({"kind":"iid","spectrum":[0.75,0.25]})"));
    REQUIRE(seq.kind() == StateSequence::Kind::Iid);
    REQUIRE(seq.single_copy_dim() == 2);
    REQUIRE(seq.spectrum_at(1).eigenvalue(0) == Approx(0.75));
  }
  SECTION("mixture") {
    const StateSequence seq = parse_sequence_spec(
        Json::parse(R"({"kind":"mixture","sigma":[0.9,0.1],"omega":[0.5,0.5],"t":0.5})"));
    REQUIRE(seq.kind() == StateSequence::Kind::Mixture);
    REQUIRE(seq.spectrum_at(1).eigenvalue(0) == Approx(0.7));
  }
  SECTION("spectra are normalized") {
    const StateSequence seq = parse_sequence_spec(Json::parse(R"({"kind":"iid","spectrum":[3,1]})"));
    REQUIRE(seq.spectrum_at(1).eigenvalue(0) == Approx(0.75));
  }
  SECTION("negative entries and unknown kinds rejected") {
    REQUIRE_THROWS_AS(parse_sequence_spec(Json::parse(R"({"kind":"iid","spectrum":[1.2,-0.2]})")),
                      ValidationError);
    REQUIRE_THROWS_AS(parse_sequence_spec(Json::parse(R"({"kind":"markov"})")), ValidationError);
  }
}

TEST_CASE("matrix JSON round trip", "[io]") {
  RandomSource rng(12);
  const DensityOperator rho = random_density(rng, 3);
  const Json j = matrix_to_json(rho.matrix());
  const Matrix back = matrix_from_json(j, 3, 3);
  REQUIRE((back - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE_THROWS_AS(matrix_from_json(j, 2, 2), ValidationError);
}

TEST_CASE("separable spec parses and normalizes", "[io]") {
  const Json j = Json::parse(R"({
    "dimA": 2, "dimB": 2,
    "terms": [
      {"weight": 1.0, "a": [[1,0],[0,0]], "b": [[1,0],[0,0]]},
      {"weight": 3.0, "a": [[0,0],[1,0]], "b": [[0,0],[1,0]]}
    ]})");
  const SeparableState sep = parse_separable_spec(j);
  REQUIRE(sep.terms().size() == 2);
  REQUIRE(sep.terms()[0].weight == Approx(0.25));
  REQUIRE(sep.joint().matrix()(3, 3).real() == Approx(0.75));
}

TEST_CASE("csv output format", "[io]") {
  CsvWriter csv({"a", "b"});
  csv.comment("provenance line");
  csv.add_row({CsvWriter::cell(1), CsvWriter::cell(0.123456789123)});
  const std::string out = csv.str();
  REQUIRE(out == "# provenance line\na,b\n1,0.123456789\n");
  REQUIRE_THROWS_AS(csv.add_row({"only-one"}), ValidationError);
}

TEST_CASE("format_float gives nine significant digits", "[io]") {
  REQUIRE(format_float(0.5623351450930002) == "0.562335145");
  REQUIRE(format_float(1.0) == "1");
  REQUIRE(format_float(-0.6931471805599453) == "-0.693147181");
}

TEST_CASE("estimate serialization", "[io]") {
  const auto est = estimate_entropy_rates(StateSequence::iid({0.5, 0.5}), {5, 10},
                                          GammaGrid{-1.5, 0.0, 0.05}, 0.05);
  const std::string csv = rate_brackets_csv(est, {"test"});
  REQUIRE(csv.find("n,gamma_lo,gamma_hi,epsilon") != std::string::npos);
  REQUIRE(csv.find("# test") == 0);
  const std::string curves = trace_curves_csv(est.curves, {});
  REQUIRE(curves.find("n,gamma,trace_value") == 0);
  const Json j = to_json(est);
  REQUIRE(j["per_n"].size() == 2);
  REQUIRE(j["curves"][0]["points"].size() == est.curves[0].points.size());
}
