#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entspec/bounds.hpp"
#include "entspec/concentration.hpp"
#include "entspec/dilution.hpp"
#include "entspec/rates.hpp"
#include "entspec/sequences.hpp"

namespace entspec {

using Json = nlohmann::ordered_json;

/// Canonical float formatting for tabular output: 9 significant digits.
std::string format_float(double v);

/// Matrices serialize as row-major arrays of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols);

/// {"kind":"iid","spectrum":[...]} or
/// {"kind":"mixture","sigma":[...],"omega":[...],"t":...}.
/// Spectra must be nonnegative and are normalized to unit sum.
StateSequence parse_sequence_spec(const Json& j);

/// {"dimA":..,"dimB":..,"terms":[{"weight":..,"a":[[re,im],..],"b":[[re,im],..]},..]}
SeparableState parse_separable_spec(const Json& j);

Json to_json(const TraceCurve& curve);
Json to_json(const SpectralRateEstimate& estimate);
Json to_json(const ConcentrationOutcome& outcome);
Json to_json(const DilutionOutcome& outcome);
Json to_json(const BoundReport& report);

/// CSV assembly with '#' provenance comments, a header row, and
/// format_float cells. Deterministic for fixed input.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);

  void comment(const std::string& text);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

  static std::string cell(double v) { return format_float(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "true" : "false"; }

 private:
  std::size_t column_count_;
  std::string header_;
  std::vector<std::string> comments_;
  std::vector<std::string> rows_;
};

std::string rate_brackets_csv(const SpectralRateEstimate& estimate,
                              const std::vector<std::string>& provenance);
std::string trace_curves_csv(const std::vector<TraceCurve>& curves,
                             const std::vector<std::string>& provenance);
std::string concentration_csv(const std::vector<ConcentrationOutcome>& outcomes,
                              const std::vector<std::string>& provenance);
std::string dilution_csv(const std::vector<DilutionOutcome>& outcomes,
                         const std::vector<std::string>& provenance);
std::string bounds_csv(const std::vector<BoundReport>& reports,
                       const std::vector<std::string>& provenance);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace entspec
