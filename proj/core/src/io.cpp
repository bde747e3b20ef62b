#include "entspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace entspec {

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

Json matrix_to_json(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      arr.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return arr;
}

Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows * cols)) {
    throw ValidationError("matrix_from_json: expected " + std::to_string(rows * cols) +
                          " row-major [re,im] entries");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index jj = 0; jj < cols; ++jj, ++k) {
      const Json& e = j[k];
      if (!e.is_array() || e.size() != 2) {
        throw ValidationError("matrix_from_json: entries must be [re, im] pairs");
      }
      m(i, jj) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

StateSequence parse_sequence_spec(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ValidationError("sequence spec: expected an object with a \"kind\" field");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "iid") {
    return StateSequence::iid(j.at("spectrum").get<std::vector<double>>());
  }
  if (kind == "mixture") {
    MixtureSpec spec;
    spec.sigma = j.at("sigma").get<std::vector<double>>();
    spec.omega = j.at("omega").get<std::vector<double>>();
    spec.t = j.at("t").get<double>();
    return StateSequence::mixture(spec);
  }
  throw ValidationError("sequence spec: unknown kind \"" + kind + "\"");
}

SeparableState parse_separable_spec(const Json& j) {
  const auto dim_a = j.at("dimA").get<Eigen::Index>();
  const auto dim_b = j.at("dimB").get<Eigen::Index>();
  std::vector<SeparableState::Term> terms;
  for (const Json& t : j.at("terms")) {
    SeparableState::Term term;
    term.weight = t.at("weight").get<double>();
    const Matrix a = matrix_from_json(t.at("a"), dim_a, 1);
    const Matrix b = matrix_from_json(t.at("b"), dim_b, 1);
    term.factor_a = a.col(0);
    term.factor_b = b.col(0);
    terms.push_back(std::move(term));
  }
  return SeparableState(dim_a, dim_b, std::move(terms));
}

Json to_json(const TraceCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) {
    points.push_back(Json::array({p.gamma, p.value}));
  }
  return Json{{"n", curve.n}, {"points", std::move(points)}};
}

Json to_json(const SpectralRateEstimate& estimate) {
  Json per_n = Json::array();
  for (const auto& b : estimate.per_n) {
    per_n.push_back(Json{{"n", b.n},
                         {"gamma_lo", b.gamma_lo},
                         {"gamma_hi", b.gamma_hi},
                         {"lo_out_of_range", b.lo_out_of_range},
                         {"hi_out_of_range", b.hi_out_of_range}});
  }
  Json curves = Json::array();
  for (const auto& c : estimate.curves) {
    curves.push_back(to_json(c));
  }
  return Json{{"epsilon", estimate.epsilon}, {"per_n", std::move(per_n)}, {"curves", std::move(curves)}};
}

Json to_json(const ConcentrationOutcome& o) {
  Json j{{"n", o.n},          {"gamma", o.gamma},
         {"p_fail", o.p_fail}, {"success_mass", o.success_mass},
         {"log_M", o.log_m},   {"floor_exact", o.floor_exact},
         {"rate", o.rate},     {"majorization_ok", o.majorization_ok},
         {"post_head_mass", o.post_head_mass}};
  j["post_spectrum_head"] = o.post_spectrum_head;
  if (o.rate_lower_bound) {
    j["rate_lower_bound"] = *o.rate_lower_bound;
  }
  return j;
}

Json to_json(const DilutionOutcome& o) {
  Json j{{"n", o.n},
         {"mode", o.mode == DilutionMode::Achievable ? "achievable" : "converse"},
         {"alpha_or_gamma", o.alpha_or_gamma},
         {"log_M", o.log_m},
         {"ceil_exact", o.ceil_exact},
         {"rate", o.rate},
         {"fidelity_lb", o.fidelity_lb}};
  if (o.converse_term1) j["converse_term1"] = *o.converse_term1;
  if (o.converse_term2) j["converse_term2"] = *o.converse_term2;
  if (o.converse_ub) j["converse_ub"] = *o.converse_ub;
  return j;
}

Json to_json(const BoundReport& r) {
  return Json{{"n", r.n},
              {"gamma", r.gamma},
              {"log_M", r.log_m},
              {"term_projection", r.term_projection},
              {"term_rank", r.term_rank},
              {"total", r.total},
              {"vacuous", r.vacuous}};
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : column_count_(columns.size()) {
  std::string header;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    header += (i ? "," : "") + columns[i];
  }
  header_ = std::move(header);
}

void CsvWriter::comment(const std::string& text) {
  comments_.push_back("# " + text);
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != column_count_) {
    throw ValidationError("CsvWriter: row width mismatch");
  }
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    row += (i ? "," : "") + cells[i];
  }
  rows_.push_back(std::move(row));
}

std::string CsvWriter::str() const {
  std::string out;
  for (const auto& c : comments_) {
    out += c + "\n";
  }
  out += header_ + "\n";
  for (const auto& r : rows_) {
    out += r + "\n";
  }
  return out;
}

std::string rate_brackets_csv(const SpectralRateEstimate& estimate,
                              const std::vector<std::string>& provenance) {
  CsvWriter csv({"n", "gamma_lo", "gamma_hi", "epsilon", "s_inf", "s_sup", "lo_out_of_range",
                 "hi_out_of_range"});
  for (const auto& p : provenance) csv.comment(p);
  for (const auto& b : estimate.per_n) {
    csv.add_row({CsvWriter::cell(b.n), CsvWriter::cell(b.gamma_lo), CsvWriter::cell(b.gamma_hi),
                 CsvWriter::cell(estimate.epsilon), CsvWriter::cell(inf_entropy_estimate(b)),
                 CsvWriter::cell(sup_entropy_estimate(b)), CsvWriter::cell(b.lo_out_of_range),
                 CsvWriter::cell(b.hi_out_of_range)});
  }
  return csv.str();
}

std::string trace_curves_csv(const std::vector<TraceCurve>& curves,
                             const std::vector<std::string>& provenance) {
  CsvWriter csv({"n", "gamma", "trace_value"});
  for (const auto& p : provenance) csv.comment(p);
  for (const auto& c : curves) {
    for (const auto& pt : c.points) {
      csv.add_row({CsvWriter::cell(c.n), CsvWriter::cell(pt.gamma), CsvWriter::cell(pt.value)});
    }
  }
  return csv.str();
}

std::string concentration_csv(const std::vector<ConcentrationOutcome>& outcomes,
                              const std::vector<std::string>& provenance) {
  CsvWriter csv({"n", "gamma", "p_fail", "log_M", "rate", "rate_lower_bound", "majorization_ok"});
  for (const auto& p : provenance) csv.comment(p);
  for (const auto& o : outcomes) {
    csv.add_row({CsvWriter::cell(o.n), CsvWriter::cell(o.gamma), CsvWriter::cell(o.p_fail),
                 CsvWriter::cell(o.log_m), CsvWriter::cell(o.rate),
                 o.rate_lower_bound ? CsvWriter::cell(*o.rate_lower_bound) : "",
                 CsvWriter::cell(o.majorization_ok)});
  }
  return csv.str();
}

std::string dilution_csv(const std::vector<DilutionOutcome>& outcomes,
                         const std::vector<std::string>& provenance) {
  CsvWriter csv({"n", "mode", "alpha_or_gamma", "rate", "fidelity_lb", "converse_term1",
                 "converse_term2", "converse_ub"});
  for (const auto& p : provenance) csv.comment(p);
  for (const auto& o : outcomes) {
    csv.add_row({CsvWriter::cell(o.n),
                 o.mode == DilutionMode::Achievable ? "achievable" : "converse",
                 CsvWriter::cell(o.alpha_or_gamma), CsvWriter::cell(o.rate),
                 CsvWriter::cell(o.fidelity_lb),
                 o.converse_term1 ? CsvWriter::cell(*o.converse_term1) : "",
                 o.converse_term2 ? CsvWriter::cell(*o.converse_term2) : "",
                 o.converse_ub ? CsvWriter::cell(*o.converse_ub) : ""});
  }
  return csv.str();
}

std::string bounds_csv(const std::vector<BoundReport>& reports,
                       const std::vector<std::string>& provenance) {
  CsvWriter csv({"n", "gamma", "log_M", "term_projection", "term_rank", "total", "vacuous"});
  for (const auto& p : provenance) csv.comment(p);
  for (const auto& r : reports) {
    csv.add_row({CsvWriter::cell(r.n), CsvWriter::cell(r.gamma), CsvWriter::cell(r.log_m),
                 CsvWriter::cell(r.term_projection), CsvWriter::cell(r.term_rank),
                 CsvWriter::cell(r.total), CsvWriter::cell(r.vacuous)});
  }
  return csv.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out << contents;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace entspec
