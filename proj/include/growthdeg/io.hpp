#ifndef GROWTHDEG_IO_HPP
#define GROWTHDEG_IO_HPP

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "growthdeg/growth.hpp"
#include "growthdeg/regseq.hpp"

namespace growthdeg {

inline constexpr const char* kToolName = "growthdeg";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line_no = 0,
             std::size_t col_no = 0)
      : std::runtime_error(what), line(line_no), col(col_no) {}
  std::size_t line = 0;  // 0 when no position applies
  std::size_t col = 0;
};

enum class InstanceKind { matrix_set, linrep, dfao };

/// One parsed self-describing instance file.
struct InstanceFile {
  InstanceKind kind = InstanceKind::matrix_set;
  std::optional<GeneratorSet> matrix_set;
  std::optional<LinRep> linrep;
  std::optional<Dfao> dfao;
  std::vector<std::string> labels;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col_of(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i + 1 < end + 1 && i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Rational entry_to_rational(const Json& j, const char* where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string(where) + ": " + e.what());
    }
  }
  if (j.is_number_integer()) {
    return Rational(Integer(j.get<long>()));
  }
  throw ParseError(std::string(where) +
                   ": entries must be integers or \"p/q\" strings");
}

inline Json rational_to_entry(const Rational& q) { return to_string(q); }

inline Matrix json_to_matrix(const Json& j, const char* where) {
  if (!j.is_array() || j.empty()) {
    throw ParseError(std::string(where) + ": matrix must be a nonempty array "
                                          "of rows");
  }
  const std::size_t rows = j.size();
  if (!j[0].is_array()) {
    throw ParseError(std::string(where) + ": matrix rows must be arrays");
  }
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw ParseError(std::string(where) + ": ragged matrix rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(i, c) = entry_to_rational(j[i][c], where);
    }
  }
  return m;
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(rational_to_entry(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Vector json_to_vector(const Json& j, const char* where) {
  if (!j.is_array()) {
    throw ParseError(std::string(where) + ": expected an array");
  }
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(entry_to_rational(e, where));
  return v;
}

inline Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(rational_to_entry(e));
  return out;
}

inline std::vector<std::string> json_to_labels(const Json& j) {
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) {
      throw ParseError("labels must be an array of strings");
    }
    for (const auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  }
  return labels;
}

}  // namespace detail

/// Parses an instance file (kinds matrix_set / linrep / dfao). Rationals
/// are written as "p/q" strings; plain JSON integers are accepted too.
inline InstanceFile parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_col_of(text, e.byte ? e.byte - 1 : 0);
    throw ParseError(e.what(), line, col);
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError("instance file must be an object with a \"kind\" tag");
  }
  const std::string kind = j["kind"].get<std::string>();
  InstanceFile out;
  out.labels = detail::json_to_labels(j);
  try {
    if (kind == "matrix_set") {
      out.kind = InstanceKind::matrix_set;
      if (!j.contains("matrices") || !j["matrices"].is_array() ||
          j["matrices"].empty()) {
        throw ParseError("matrix_set: missing nonempty \"matrices\" array");
      }
      std::vector<Matrix> mats;
      for (const auto& mj : j["matrices"]) {
        mats.push_back(detail::json_to_matrix(mj, "matrix_set"));
      }
      if (j.contains("dim") &&
          j["dim"].get<std::size_t>() != mats.front().rows()) {
        throw ParseError("matrix_set: \"dim\" disagrees with the matrices");
      }
      if (j.contains("alphabet") &&
          j["alphabet"].get<std::size_t>() != mats.size()) {
        throw ParseError("matrix_set: \"alphabet\" disagrees with the count");
      }
      out.matrix_set = GeneratorSet(std::move(mats), out.labels);
    } else if (kind == "linrep") {
      out.kind = InstanceKind::linrep;
      for (const char* field : {"w", "matrices", "v"}) {
        if (!j.contains(field)) {
          throw ParseError(std::string("linrep: missing \"") + field + "\"");
        }
      }
      std::vector<Matrix> mats;
      for (const auto& mj : j["matrices"]) {
        mats.push_back(detail::json_to_matrix(mj, "linrep"));
      }
      Vector w = detail::json_to_vector(j["w"], "linrep w");
      Vector v = detail::json_to_vector(j["v"], "linrep v");
      const std::size_t alphabet =
          j.contains("alphabet") ? j["alphabet"].get<std::size_t>()
                                 : mats.size();
      if (j.contains("dim") && j["dim"].get<std::size_t>() != w.size()) {
        throw ParseError("linrep: \"dim\" disagrees with the vectors");
      }
      out.linrep = LinRep(alphabet, std::move(w), std::move(mats), std::move(v));
    } else if (kind == "dfao") {
      out.kind = InstanceKind::dfao;
      Dfao a;
      for (const char* field : {"states", "initial", "transitions", "output"}) {
        if (!j.contains(field)) {
          throw ParseError(std::string("dfao: missing \"") + field + "\"");
        }
      }
      a.states = j["states"].get<std::size_t>();
      a.initial = j["initial"].get<std::size_t>();
      for (const auto& row : j["transitions"]) {
        std::vector<std::size_t> r;
        for (const auto& t : row) r.push_back(t.get<std::size_t>());
        a.transitions.push_back(std::move(r));
      }
      a.output = detail::json_to_vector(j["output"], "dfao output");
      a.validate();
      out.dfao = std::move(a);
    } else {
      throw ParseError("unknown instance kind \"" + kind + "\"");
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return out;
}

/// Serializes a linear representation as a loadable instance file.
inline Json linrep_to_instance(const LinRep& rep,
                               const std::vector<std::string>& labels = {}) {
  Json j;
  j["kind"] = "linrep";
  j["alphabet"] = rep.alphabet;
  j["dim"] = rep.dim;
  j["w"] = detail::vector_to_json(rep.w);
  Json mats = Json::array();
  for (const auto& m : rep.matrices) mats.push_back(detail::matrix_to_json(m));
  j["matrices"] = std::move(mats);
  j["v"] = detail::vector_to_json(rep.v);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

inline Json matrix_set_to_instance(const GeneratorSet& gens) {
  Json j;
  j["kind"] = "matrix_set";
  j["dim"] = gens.dim();
  j["alphabet"] = gens.alphabet();
  Json mats = Json::array();
  for (const auto& m : gens.matrices()) {
    mats.push_back(detail::matrix_to_json(m));
  }
  j["matrices"] = std::move(mats);
  if (!gens.labels().empty()) j["labels"] = gens.labels();
  return j;
}

/// Typed mirror of the report JSON; round-trips losslessly.
struct ReportFile {
  std::string tool_name = kToolName;
  std::string tool_version = kToolVersion;
  std::string verdict;
  std::optional<int> degree;      // finite polynomial degree
  bool degree_infinite = false;   // exponential growth
  std::string rho;
  Word witness_word;
  std::string witness_char_poly;
  std::vector<std::size_t> filtration_dims;
  std::string exponent_a;
  std::optional<std::size_t> chain_depth;
  std::vector<std::size_t> quotient_sizes;
  std::string norm;
  std::vector<std::string> mn_values;
  std::vector<std::size_t> mn_frontier;
  bool mn_truncated = false;
  std::size_t mn_reliable_upto = 0;
  std::optional<double> slope;
  std::size_t fit_lo = 0, fit_hi = 0;
  std::string c1, c2;
  std::size_t max_n = 0, word_budget = 0, closure_cap = 0, frontier_budget = 0;
  std::string inconclusive_reason;
  std::optional<std::string> timestamp;
};

inline ReportFile make_report_file(const GrowthReport& report,
                                   std::optional<std::string> timestamp = {}) {
  ReportFile f;
  f.verdict = verdict_name(report.verdict);
  if (report.verdict == GrowthVerdict::polynomial) f.degree = report.degree;
  f.degree_infinite = report.verdict == GrowthVerdict::exponential;
  f.rho = rho_name(report.rho);
  f.witness_word = report.witness_word;
  if (report.witness_char_poly) {
    f.witness_char_poly = report.witness_char_poly->to_string();
  }
  if (report.filtration) {
    for (const auto& s : report.filtration->chain) {
      f.filtration_dims.push_back(s.dim());
    }
    f.exponent_a = to_string(report.filtration->exponent);
    f.chain_depth = report.filtration->depth();
    f.quotient_sizes = report.filtration->quotient_sizes;
  }
  f.norm = norm_name(report.mn.norm);
  for (const auto& v : report.mn.values) f.mn_values.push_back(to_string(v));
  f.mn_frontier = report.mn.frontier;
  f.mn_truncated = report.mn.truncated;
  f.mn_reliable_upto = report.mn.reliable_upto;
  f.slope = report.empirical_slope;
  f.fit_lo = report.fit_lo;
  f.fit_hi = report.fit_hi;
  if (report.empirical_c1) f.c1 = to_string(*report.empirical_c1);
  if (report.empirical_c2) f.c2 = to_string(*report.empirical_c2);
  f.max_n = report.budgets_used.max_n;
  f.word_budget = report.budgets_used.word_budget;
  f.closure_cap = report.budgets_used.closure_cap;
  f.frontier_budget = report.budgets_used.frontier_budget;
  f.inconclusive_reason = report.inconclusive_reason;
  f.timestamp = std::move(timestamp);
  return f;
}

inline Json to_json(const ReportFile& f) {
  Json j;
  j["tool"] = Json{{"name", f.tool_name}, {"version", f.tool_version}};
  j["kind"] = "growth_report";
  j["verdict"] = f.verdict;
  if (f.degree) {
    j["degree"] = *f.degree;
  } else if (f.degree_infinite) {
    j["degree"] = "infinity";
  }
  j["rho"] = f.rho;
  Json certs;
  if (!f.witness_word.empty()) {
    certs["witness_word"] = f.witness_word;
    certs["witness_char_poly"] = f.witness_char_poly;
  }
  if (!f.filtration_dims.empty()) {
    certs["filtration_dims"] = f.filtration_dims;
    certs["a"] = f.exponent_a;
    certs["k"] = *f.chain_depth;
    certs["quotient_sizes"] = f.quotient_sizes;
  }
  j["certificates"] = std::move(certs);
  j["mn_table"] = Json{{"norm", f.norm},
                       {"values", f.mn_values},
                       {"frontier", f.mn_frontier},
                       {"truncated", f.mn_truncated},
                       {"reliable_upto", f.mn_reliable_upto}};
  Json emp;
  if (f.slope) emp["slope"] = *f.slope;
  emp["fit_range"] = Json::array({f.fit_lo, f.fit_hi});
  if (!f.c1.empty()) {
    emp["c1"] = f.c1;
    emp["c2"] = f.c2;
  }
  j["empirical"] = std::move(emp);
  j["budgets"] = Json{{"max_n", f.max_n},
                      {"word_budget", f.word_budget},
                      {"closure_cap", f.closure_cap},
                      {"frontier_budget", f.frontier_budget}};
  if (!f.inconclusive_reason.empty()) {
    j["inconclusive_reason"] = f.inconclusive_reason;
  }
  if (f.timestamp) j["timestamp"] = *f.timestamp;
  return j;
}

inline ReportFile report_file_from_json(const Json& j) {
  ReportFile f;
  f.tool_name = j.at("tool").at("name").get<std::string>();
  f.tool_version = j.at("tool").at("version").get<std::string>();
  f.verdict = j.at("verdict").get<std::string>();
  if (j.contains("degree")) {
    if (j["degree"].is_string()) {
      f.degree_infinite = true;
    } else {
      f.degree = j["degree"].get<int>();
    }
  }
  f.rho = j.at("rho").get<std::string>();
  const Json& certs = j.at("certificates");
  if (certs.contains("witness_word")) {
    f.witness_word = certs["witness_word"].get<Word>();
    f.witness_char_poly = certs["witness_char_poly"].get<std::string>();
  }
  if (certs.contains("filtration_dims")) {
    f.filtration_dims =
        certs["filtration_dims"].get<std::vector<std::size_t>>();
    f.exponent_a = certs["a"].get<std::string>();
    f.chain_depth = certs["k"].get<std::size_t>();
    f.quotient_sizes = certs["quotient_sizes"].get<std::vector<std::size_t>>();
  }
  const Json& mn = j.at("mn_table");
  f.norm = mn.at("norm").get<std::string>();
  f.mn_values = mn.at("values").get<std::vector<std::string>>();
  f.mn_frontier = mn.at("frontier").get<std::vector<std::size_t>>();
  f.mn_truncated = mn.at("truncated").get<bool>();
  f.mn_reliable_upto = mn.at("reliable_upto").get<std::size_t>();
  const Json& emp = j.at("empirical");
  if (emp.contains("slope")) f.slope = emp["slope"].get<double>();
  f.fit_lo = emp.at("fit_range")[0].get<std::size_t>();
  f.fit_hi = emp.at("fit_range")[1].get<std::size_t>();
  if (emp.contains("c1")) {
    f.c1 = emp["c1"].get<std::string>();
    f.c2 = emp["c2"].get<std::string>();
  }
  const Json& budgets = j.at("budgets");
  f.max_n = budgets.at("max_n").get<std::size_t>();
  f.word_budget = budgets.at("word_budget").get<std::size_t>();
  f.closure_cap = budgets.at("closure_cap").get<std::size_t>();
  f.frontier_budget = budgets.at("frontier_budget").get<std::size_t>();
  if (j.contains("inconclusive_reason")) {
    f.inconclusive_reason = j["inconclusive_reason"].get<std::string>();
  }
  if (j.contains("timestamp")) {
    f.timestamp = j["timestamp"].get<std::string>();
  }
  return f;
}

inline Json seq_report_to_json(const SeqGrowthReport& report,
                               std::optional<std::string> timestamp = {}) {
  Json j;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  j["kind"] = "seq_growth_report";
  j["verdict"] = seq_verdict_name(report.verdict);
  if (report.verdict == SeqVerdict::finite_degree) j["grdeg"] = report.grdeg;
  if (report.verdict == SeqVerdict::infinite_degree) j["grdeg"] = "infinity";
  j["in_r0"] = three_valued_name(report.in_r0);
  j["minimized_dim"] = report.minimized_dim;
  Json emp;
  if (report.empirical_slope) emp["slope"] = *report.empirical_slope;
  Json max_abs = Json::array();
  for (const auto& v : report.max_abs) max_abs.push_back(to_string(v));
  emp["max_abs"] = std::move(max_abs);
  j["empirical"] = std::move(emp);
  if (report.matrix_report) {
    j["matrix_report"] = to_json(make_report_file(*report.matrix_report));
  }
  if (timestamp) j["timestamp"] = *timestamp;
  return j;
}

/// CSV table of m_n values: header n,m_n,frontier,truncated; rows past the
/// reliable range carry truncated = 1 and a trailing comment marks them as
/// lower bounds.
inline std::string mn_to_csv(const MnTable& table) {
  std::ostringstream out;
  out << "n,m_n,frontier,truncated\n";
  for (std::size_t n = 0; n < table.values.size(); ++n) {
    const bool unreliable = table.truncated && n > table.reliable_upto;
    out << n << ',' << to_string(table.values[n]) << ',' << table.frontier[n]
        << ',' << (unreliable ? 1 : 0) << '\n';
  }
  if (table.truncated) {
    out << "# frontier budget exceeded: rows with truncated=1 are lower "
           "bounds\n";
  }
  return out.str();
}

}  // namespace growthdeg

#endif  // GROWTHDEG_IO_HPP
