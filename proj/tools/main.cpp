// entspec: finite-n entanglement manipulation rates for state sequences.
//
// Subcommands: rates, concentrate, dilute, bounds, separation, lemmas.
// Flags override values loaded from a --config JSON file. Exit codes:
// 0 ok, 2 config/parse error, 3 numerical validation failure, 4 resource cap.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entspec/run.hpp"

namespace {

struct FlagState {
  std::string sequence_kind;
  std::vector<double> spectrum;
  std::vector<double> sigma;
  std::vector<double> omega;
  double t = 0.5;
  std::vector<int> n_list;
  double gamma = 0.0;
  double rate = 0.0;
  double s_sup = 0.0;
  double epsilon = 0.01;
  double delta = 0.05;
  double grid_min = -2.5;
  double grid_max = 2.5;
  double grid_step = 0.005;
  std::uint64_t seed = 0;
  int trials = 1000;
  int dim = 4;
  std::string mode = "achievable";
  std::string format = "csv";
  std::string output;
  std::string curves_output;
  std::string plot_path;
  std::string config_path;
};

entspec::Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CLI::ValidationError("--config", "cannot open " + path);
  }
  entspec::Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("JSON parse error: ") + e.what());
  }
  return j;
}

// Config file first, then any flag the user actually passed on top.
entspec::RunConfig build_config(const std::string& command, const FlagState& f, CLI::App* sub) {
  entspec::RunConfig cfg;
  cfg.command = command;

  entspec::Json file;
  if (!f.config_path.empty()) {
    file = load_json_file(f.config_path);
    if (file.contains("command") && file["command"].get<std::string>() != command) {
      throw CLI::ValidationError("--config", "config file is for command \"" +
                                                  file["command"].get<std::string>() + "\"");
    }
    if (file.contains("sequence")) cfg.sequence = file["sequence"];
    // the bounds payload reuses "n" as a scalar copy count
    if (file.contains("n") && file["n"].is_array()) {
      cfg.n_list = file["n"].get<std::vector<int>>();
    }
    if (file.contains("grid")) {
      cfg.grid.min = file["grid"].value("min", cfg.grid.min);
      cfg.grid.max = file["grid"].value("max", cfg.grid.max);
      cfg.grid.step = file["grid"].value("step", cfg.grid.step);
    }
    if (file.contains("epsilon")) cfg.epsilon = file["epsilon"].get<double>();
    if (file.contains("delta")) cfg.delta = file["delta"].get<double>();
    if (file.contains("gamma")) cfg.gamma = file["gamma"].get<double>();
    if (file.contains("rate")) cfg.rate = file["rate"].get<double>();
    if (file.contains("s_sup")) cfg.s_sup = file["s_sup"].get<double>();
    if (file.contains("mode")) cfg.dilute_mode = file["mode"].get<std::string>();
    if (file.contains("trials")) cfg.trials = file["trials"].get<int>();
    if (file.contains("dim")) cfg.dim = file["dim"].get<int>();
    if (file.contains("seed")) cfg.seed = file["seed"].get<std::uint64_t>();
    if (file.contains("format")) cfg.format = file["format"].get<std::string>();
    if (file.contains("output")) cfg.output = file["output"].get<std::string>();
    if (file.contains("plot")) cfg.plot_path = file["plot"].get<std::string>();
    if (command == "bounds") cfg.bounds_config = file;
  }

  auto passed = [&](const std::string& name) { return sub->count(name) > 0; };
  if (passed("--spectrum")) {
    cfg.sequence = entspec::Json{{"kind", "iid"}, {"spectrum", f.spectrum}};
  }
  if (passed("--sigma") || passed("--omega")) {
    if (!(passed("--sigma") && passed("--omega"))) {
      throw CLI::ValidationError("--sigma/--omega", "both spectra are required for a mixture");
    }
    cfg.sequence =
        entspec::Json{{"kind", "mixture"}, {"sigma", f.sigma}, {"omega", f.omega}, {"t", f.t}};
  }
  if (passed("--sequence")) {
    // --sequence names the kind; the payload flags above fill it in
    if (!cfg.sequence || cfg.sequence->value("kind", "") != f.sequence_kind) {
      throw CLI::ValidationError("--sequence", "kind \"" + f.sequence_kind +
                                                   "\" needs matching --spectrum or --sigma/--omega");
    }
  }
  if (passed("--n")) cfg.n_list = f.n_list;
  if (passed("--gamma")) cfg.gamma = f.gamma;
  if (passed("--rate")) cfg.rate = f.rate;
  if (passed("--s-sup")) cfg.s_sup = f.s_sup;
  if (passed("--epsilon")) cfg.epsilon = f.epsilon;
  if (passed("--delta")) cfg.delta = f.delta;
  if (passed("--grid-min")) cfg.grid.min = f.grid_min;
  if (passed("--grid-max")) cfg.grid.max = f.grid_max;
  if (passed("--grid-step")) cfg.grid.step = f.grid_step;
  if (passed("--seed")) cfg.seed = f.seed;
  if (passed("--trials")) cfg.trials = f.trials;
  if (passed("--dim")) cfg.dim = f.dim;
  if (passed("--mode")) cfg.dilute_mode = f.mode;
  if (passed("--format")) cfg.format = f.format;
  if (passed("--output")) cfg.output = f.output;
  if (passed("--curves")) cfg.curves_output = f.curves_output;
  if (passed("--plot")) cfg.plot_path = f.plot_path;
  return cfg;
}

void add_common_flags(CLI::App* sub, FlagState& f) {
  sub->add_option("--sequence", f.sequence_kind, "sequence kind: iid | mixture");
  sub->add_option("--spectrum", f.spectrum, "iid single-copy spectrum")->delimiter(',');
  sub->add_option("--sigma", f.sigma, "mixture sigma spectrum")->delimiter(',');
  sub->add_option("--omega", f.omega, "mixture omega spectrum")->delimiter(',');
  sub->add_option("--t", f.t, "mixture weight t in (0,1)");
  sub->add_option("--n", f.n_list, "copy counts, increasing")->delimiter(',');
  sub->add_option("--gamma", f.gamma, "rate parameter gamma (nats)");
  sub->add_option("--rate", f.rate, "dilution rate R (nats)");
  sub->add_option("--s-sup", f.s_sup, "sup-entropy estimate for achievable dilution");
  sub->add_option("--epsilon", f.epsilon, "bracket threshold in (0, 0.5)");
  sub->add_option("--delta", f.delta, "rate slack delta");
  sub->add_option("--grid-min", f.grid_min, "gamma grid minimum");
  sub->add_option("--grid-max", f.grid_max, "gamma grid maximum");
  sub->add_option("--grid-step", f.grid_step, "gamma grid step");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--trials", f.trials, "lemma suite trials");
  sub->add_option("--dim", f.dim, "lemma suite dimension (2..6)");
  sub->add_option("--mode", f.mode, "dilute mode: achievable | converse");
  sub->add_option("--format", f.format, "output format: csv | json");
  sub->add_option("--output", f.output, "output file (default: stdout)");
  sub->add_option("--curves", f.curves_output, "also write the trace-curve CSV here");
  sub->add_option("--plot", f.plot_path, "write an SVG chart here");
  sub->add_option("--config", f.config_path, "JSON config file (flags override)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-n entanglement manipulation rates for bipartite state sequences"};
  app.require_subcommand(1);

  FlagState flags;
  const std::vector<std::string> commands = {"rates",  "concentrate", "dilute",
                                             "bounds", "separation",  "lemmas"};
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    add_common_flags(sub, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << e.what() << "\n";
    return entspec::kExitConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const entspec::RunConfig cfg = build_config(sub->get_name(), flags, sub);
    return entspec::run(cfg, std::cout);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return entspec::kExitConfigError;
  } catch (const entspec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return entspec::kExitConfigError;
  } catch (const entspec::ResourceCapError& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return entspec::kExitResourceCap;
  } catch (const entspec::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return entspec::kExitNumericalError;
  } catch (const entspec::ProtocolAbort& e) {
    std::cerr << "protocol abort: " << e.what() << "\n";
    return entspec::kExitNumericalError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return entspec::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return entspec::kExitNumericalError;
  }
}
