#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entspec/io.hpp"

namespace entspec {

/// Resolved batch-run configuration. Field defaults are the artifact-wide
/// defaults; the separation command resolves epsilon to 0.1 when unset
/// (the 1% threshold does not localize the sigma branch at n = 200).
struct RunConfig {
  std::string command;  // rates | concentrate | dilute | bounds | separation | lemmas
  std::optional<Json> sequence;
  std::vector<int> n_list;
  GammaGrid grid;
  std::optional<double> epsilon;
  double delta = 0.05;
  std::optional<double> gamma;
  std::optional<double> rate;
  std::optional<double> s_sup;
  std::string dilute_mode = "achievable";  // achievable | converse
  int trials = 1000;
  int dim = 4;
  std::uint64_t seed = 0;
  std::string format = "csv";  // csv | json
  std::string output;          // empty -> stream
  std::string curves_output;   // optional extra table for rates
  std::string plot_path;       // optional SVG
  std::optional<Json> bounds_config;

  double resolved_epsilon() const;
};

/// Executes one batch command; writes tables/plots to disk (or the stream
/// when no output path is set). Returns the process exit status: 0 on
/// success, 3 when a lemma suite reports violations. Validation errors,
/// cap violations and protocol aborts surface as exceptions for the
/// frontend to map onto exit codes 2/3/4.
int run(const RunConfig& config, std::ostream& fallback_stream);

/// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;
inline constexpr int kExitResourceCap = 4;

}  // namespace entspec
