#include "entspec/run.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "entspec/lemmas.hpp"
#include "entspec/plot.hpp"

namespace entspec {

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i]);
  }
  return out;
}

std::string sequence_desc(const std::optional<Json>& spec) {
  return spec ? spec->dump() : "(none)";
}

void validate_common(const RunConfig& cfg) {
  if (!cfg.n_list.empty()) {
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
      if (cfg.n_list[i] < 1) {
        throw ValidationError("n values must be >= 1");
      }
      if (cfg.n_list[i] > kCopyCountCap) {
        throw ResourceCapError("n " + std::to_string(cfg.n_list[i]) + " exceeds cap " +
                               std::to_string(kCopyCountCap));
      }
      if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1]) {
        throw ValidationError("n list must be strictly increasing");
      }
    }
  }
  const double eps = cfg.resolved_epsilon();
  if (!(eps > 0.0 && eps < 0.5)) {
    throw ValidationError("epsilon must lie in (0, 0.5)");
  }
  cfg.grid.validate();
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("format must be csv or json");
  }
}

std::vector<std::string> provenance(const RunConfig& cfg) {
  std::vector<std::string> lines;
  lines.push_back("entspec " + cfg.command);
  lines.push_back("sequence=" + sequence_desc(cfg.sequence));
  lines.push_back("n=" + join_ints(cfg.n_list));
  lines.push_back("grid_min=" + format_float(cfg.grid.min) + " grid_max=" +
                  format_float(cfg.grid.max) + " grid_step=" + format_float(cfg.grid.step));
  lines.push_back("epsilon=" + format_float(cfg.resolved_epsilon()) +
                  " delta=" + format_float(cfg.delta) + " seed=" + std::to_string(cfg.seed));
  if (cfg.gamma) lines.push_back("gamma=" + format_float(*cfg.gamma));
  if (cfg.rate) lines.push_back("rate=" + format_float(*cfg.rate));
  if (cfg.s_sup) lines.push_back("s_sup=" + format_float(*cfg.s_sup));
  lines.push_back("format=" + cfg.format);
  return lines;
}

void deliver(const RunConfig& cfg, const std::string& contents, std::ostream& stream) {
  if (cfg.output.empty()) {
    stream << contents;
  } else {
    write_text_file(cfg.output, contents);
  }
}

Json config_json(const RunConfig& cfg) {
  Json j{{"command", cfg.command},
         {"n", cfg.n_list},
         {"grid", Json{{"min", cfg.grid.min}, {"max", cfg.grid.max}, {"step", cfg.grid.step}}},
         {"epsilon", cfg.resolved_epsilon()},
         {"delta", cfg.delta},
         {"seed", cfg.seed}};
  if (cfg.sequence) j["sequence"] = *cfg.sequence;
  if (cfg.gamma) j["gamma"] = *cfg.gamma;
  if (cfg.rate) j["rate"] = *cfg.rate;
  if (cfg.s_sup) j["s_sup"] = *cfg.s_sup;
  return j;
}

std::vector<PlotSeries> curve_series(const std::vector<TraceCurve>& curves) {
  std::vector<PlotSeries> series;
  for (const auto& c : curves) {
    PlotSeries s;
    s.label = "n=" + std::to_string(c.n);
    for (const auto& p : c.points) {
      s.points.emplace_back(p.gamma, p.value);
    }
    series.push_back(std::move(s));
  }
  return series;
}

StateSequence require_sequence(const RunConfig& cfg) {
  if (!cfg.sequence) {
    throw ConfigError(cfg.command + ": a sequence spec is required");
  }
  return parse_sequence_spec(*cfg.sequence);
}

void require_n_list(const RunConfig& cfg) {
  if (cfg.n_list.empty()) {
    throw ConfigError(cfg.command + ": nonempty n list required");
  }
}

int run_rates(const RunConfig& cfg, std::ostream& stream) {
  require_n_list(cfg);
  const StateSequence seq = require_sequence(cfg);
  const SpectralRateEstimate est =
      estimate_entropy_rates(seq, cfg.n_list, cfg.grid, cfg.resolved_epsilon());
  if (cfg.format == "json") {
    Json j{{"config", config_json(cfg)}, {"estimate", to_json(est)}};
    deliver(cfg, j.dump(2) + "\n", stream);
  } else {
    deliver(cfg, rate_brackets_csv(est, provenance(cfg)), stream);
    if (!cfg.curves_output.empty()) {
      write_text_file(cfg.curves_output, trace_curves_csv(est.curves, provenance(cfg)));
    }
  }
  if (!cfg.plot_path.empty()) {
    emit_plot(curve_series(est.curves), "trace functional vs gamma", "gamma (nats)",
              "Tr[{Pi>=0}Pi]", cfg.plot_path);
  }
  return kExitOk;
}

int run_concentrate(const RunConfig& cfg, std::ostream& stream) {
  require_n_list(cfg);
  if (!cfg.gamma) {
    throw ConfigError("concentrate: --gamma is required");
  }
  const StateSequence seq = require_sequence(cfg);
  const auto outcomes = concentration_sweep(seq, *cfg.gamma, cfg.n_list);
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& o : outcomes) arr.push_back(to_json(o));
    Json j{{"config", config_json(cfg)}, {"outcomes", std::move(arr)}};
    deliver(cfg, j.dump(2) + "\n", stream);
  } else {
    deliver(cfg, concentration_csv(outcomes, provenance(cfg)), stream);
  }
  if (!cfg.plot_path.empty()) {
    PlotSeries s{"p_fail", {}};
    for (const auto& o : outcomes) s.points.emplace_back(o.n, o.p_fail);
    emit_plot({s}, "concentration failure probability", "n", "p_fail", cfg.plot_path);
  }
  return kExitOk;
}

int run_dilute(const RunConfig& cfg, std::ostream& stream) {
  require_n_list(cfg);
  const StateSequence seq = require_sequence(cfg);
  std::vector<DilutionOutcome> outcomes;
  if (cfg.dilute_mode == "achievable") {
    double s_sup;
    if (cfg.s_sup) {
      s_sup = *cfg.s_sup;
    } else {
      // estimate the sup-entropy rate at the largest requested n
      const std::vector<int> probe{cfg.n_list.back()};
      const SpectralRateEstimate est =
          estimate_entropy_rates(seq, probe, cfg.grid, cfg.resolved_epsilon());
      s_sup = sup_entropy_estimate(est.per_n.front());
    }
    outcomes = dilution_achievable_sweep(seq, s_sup, cfg.delta, cfg.n_list);
  } else if (cfg.dilute_mode == "converse") {
    if (!cfg.gamma || !cfg.rate) {
      throw ConfigError("dilute converse mode: --gamma and --rate are required");
    }
    outcomes = dilution_converse_sweep(seq, *cfg.gamma, *cfg.rate, cfg.n_list);
  } else {
    throw ConfigError("dilute: mode must be achievable or converse");
  }
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& o : outcomes) arr.push_back(to_json(o));
    Json j{{"config", config_json(cfg)}, {"outcomes", std::move(arr)}};
    deliver(cfg, j.dump(2) + "\n", stream);
  } else {
    deliver(cfg, dilution_csv(outcomes, provenance(cfg)), stream);
  }
  if (!cfg.plot_path.empty()) {
    PlotSeries s{"fidelity_lb", {}};
    for (const auto& o : outcomes) s.points.emplace_back(o.n, o.fidelity_lb);
    emit_plot({s}, "dilution fidelity", "n", "fidelity", cfg.plot_path);
  }
  return kExitOk;
}

int run_bounds(const RunConfig& cfg, std::ostream& stream) {
  if (!cfg.bounds_config) {
    throw ConfigError("bounds: a JSON config (--config) is required");
  }
  const Json& bc = *cfg.bounds_config;
  const std::string mode = bc.at("mode").get<std::string>();
  const auto gamma = bc.at("gamma").get<double>();
  const auto m = bc.at("M").get<std::uint64_t>();
  const int n = bc.value("n", 1);
  std::vector<BoundReport> reports;
  if (mode == "coherent") {
    const Json& om = bc.at("omega");
    const auto dims = om.at("dims").get<std::vector<Eigen::Index>>();
    if (dims.size() != 2) {
      throw ConfigError("bounds: omega.dims must be [dimA, dimB]");
    }
    const Matrix mat = matrix_from_json(om.at("matrix"), dims[0] * dims[1], dims[0] * dims[1]);
    reports.push_back(coherent_fidelity_bound(DensityOperator(mat), dims[0], dims[1], gamma, m, n));
  } else if (mode == "relent") {
    const Json& rj = bc.at("rho");
    const auto dims = rj.at("dims").get<std::vector<Eigen::Index>>();
    if (dims.size() != 2) {
      throw ConfigError("bounds: rho.dims must be [dimA, dimB]");
    }
    const Matrix mat = matrix_from_json(rj.at("matrix"), dims[0] * dims[1], dims[0] * dims[1]);
    const DensityOperator rho(mat);
    std::vector<SeparableState> candidates;
    for (const Json& sj : bc.at("sigma")) {
      candidates.push_back(parse_separable_spec(sj));
    }
    for (const auto& c : candidates) {
      reports.push_back(relent_fidelity_bound(rho, c, gamma, m, n));
    }
    const auto [best_idx, best] = best_relent_bound(rho, candidates, gamma, m, n);
    (void)best_idx;
    reports.push_back(best);  // final row: tightest candidate
  } else {
    throw ConfigError("bounds: mode must be coherent or relent");
  }
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    Json j{{"config", config_json(cfg)}, {"reports", std::move(arr)}};
    deliver(cfg, j.dump(2) + "\n", stream);
  } else {
    deliver(cfg, bounds_csv(reports, provenance(cfg)), stream);
  }
  return kExitOk;
}

int run_lemmas(const RunConfig& cfg, std::ostream& stream) {
  if (cfg.trials < 1) {
    throw ValidationError("lemmas: trials must be >= 1");
  }
  if (cfg.dim < 2 || cfg.dim > 6) {
    throw ValidationError("lemmas: dim must lie in 2..6");
  }
  CsvWriter csv({"lemma", "trials", "failures", "worst_margin"});
  for (const auto& p : provenance(cfg)) csv.comment(p);
  int total_failures = 0;
  Json arr = Json::array();
  for (int kind = 1; kind <= 3; ++kind) {
    const LemmaSuiteResult r = run_lemma_suite(kind, cfg.trials, cfg.dim, cfg.seed);
    total_failures += r.failures;
    csv.add_row({CsvWriter::cell(kind), CsvWriter::cell(r.trials), CsvWriter::cell(r.failures),
                 CsvWriter::cell(r.worst_margin)});
    arr.push_back(Json{{"lemma", kind},
                       {"trials", r.trials},
                       {"failures", r.failures},
                       {"worst_margin", r.worst_margin}});
  }
  if (cfg.format == "json") {
    Json j{{"config", config_json(cfg)}, {"suites", std::move(arr)}};
    deliver(cfg, j.dump(2) + "\n", stream);
  } else {
    deliver(cfg, csv.str(), stream);
  }
  return total_failures == 0 ? kExitOk : kExitNumericalError;
}

int run_separation(const RunConfig& cfg, std::ostream& stream) {
  require_n_list(cfg);
  if (!cfg.sequence || cfg.sequence->value("kind", "") != "mixture") {
    throw ConfigError("separation: requires a mixture sequence (--sigma/--omega/--t)");
  }
  const StateSequence seq = require_sequence(cfg);
  const double eps = cfg.resolved_epsilon();

  const SpectralRateEstimate est = estimate_entropy_rates(seq, cfg.n_list, cfg.grid, eps);
  const RateBracket& final_bracket = est.per_n.back();
  const double s_inf = inf_entropy_estimate(final_bracket);
  const double s_sup = sup_entropy_estimate(final_bracket);

  // concentration near the distillable rate, dilution converse near the cost
  const double gamma_conc = s_inf - cfg.delta;
  const auto conc = concentration_sweep(seq, gamma_conc, cfg.n_list);
  const double conv_gamma = s_sup - cfg.delta / 2.0;
  const double conv_rate = s_sup - cfg.delta;
  const auto dil = dilution_converse_sweep(seq, conv_gamma, conv_rate, cfg.n_list);

  // disjointness of the two entropy estimates beyond grid resolution
  const bool gap = s_inf + cfg.grid.step < s_sup - cfg.grid.step;

  if (cfg.format == "json") {
    Json jconc = Json::array();
    for (const auto& o : conc) jconc.push_back(to_json(o));
    Json jdil = Json::array();
    for (const auto& o : dil) jdil.push_back(to_json(o));
    Json j{{"config", config_json(cfg)},
           {"rates", to_json(est)},
           {"concentration", std::move(jconc)},
           {"dilution_converse", std::move(jdil)},
           {"summary",
            Json{{"n", final_bracket.n},
                 {"s_inf", s_inf},
                 {"s_sup", s_sup},
                 {"gap", gap}}}};
    deliver(cfg, j.dump(2) + "\n", stream);
  } else {
    CsvWriter csv({"section", "n", "a", "b", "c", "d"});
    for (const auto& p : provenance(cfg)) csv.comment(p);
    csv.comment("rates rows: a=gamma_lo b=gamma_hi c=s_inf d=s_sup");
    csv.comment("concentration rows (gamma=" + format_float(gamma_conc) +
                "): a=p_fail b=rate c=rate_lower_bound d=majorization_ok");
    csv.comment("dilution_converse rows (gamma=" + format_float(conv_gamma) + ", R=" +
                format_float(conv_rate) + "): a=term1 b=term2 c=converse_ub d=fidelity_lb");
    csv.comment("summary row: a=s_inf b=s_sup c=gap d=epsilon");
    for (const auto& b : est.per_n) {
      csv.add_row({"rates", CsvWriter::cell(b.n), CsvWriter::cell(b.gamma_lo),
                   CsvWriter::cell(b.gamma_hi), CsvWriter::cell(inf_entropy_estimate(b)),
                   CsvWriter::cell(sup_entropy_estimate(b))});
    }
    for (const auto& o : conc) {
      csv.add_row({"concentration", CsvWriter::cell(o.n), CsvWriter::cell(o.p_fail),
                   CsvWriter::cell(o.rate),
                   o.rate_lower_bound ? CsvWriter::cell(*o.rate_lower_bound) : "",
                   CsvWriter::cell(o.majorization_ok)});
    }
    for (const auto& o : dil) {
      csv.add_row({"dilution_converse", CsvWriter::cell(o.n), CsvWriter::cell(*o.converse_term1),
                   CsvWriter::cell(*o.converse_term2), CsvWriter::cell(*o.converse_ub),
                   CsvWriter::cell(o.fidelity_lb)});
    }
    csv.add_row({"summary", CsvWriter::cell(final_bracket.n), CsvWriter::cell(s_inf),
                 CsvWriter::cell(s_sup), CsvWriter::cell(gap), CsvWriter::cell(eps)});
    deliver(cfg, csv.str(), stream);
  }
  if (!cfg.plot_path.empty()) {
    emit_plot(curve_series(est.curves), "mixture trace functional", "gamma (nats)",
              "Tr[{Pi>=0}Pi]", cfg.plot_path);
  }
  return kExitOk;
}

}  // namespace

double RunConfig::resolved_epsilon() const {
  if (epsilon) return *epsilon;
  return command == "separation" ? 0.1 : 0.01;
}

int run(const RunConfig& cfg, std::ostream& stream) {
  validate_common(cfg);
  if (cfg.command == "rates") return run_rates(cfg, stream);
  if (cfg.command == "concentrate") return run_concentrate(cfg, stream);
  if (cfg.command == "dilute") return run_dilute(cfg, stream);
  if (cfg.command == "bounds") return run_bounds(cfg, stream);
  if (cfg.command == "separation") return run_separation(cfg, stream);
  if (cfg.command == "lemmas") return run_lemmas(cfg, stream);
  throw ConfigError("unknown command: " + cfg.command);
}

}  // namespace entspec
