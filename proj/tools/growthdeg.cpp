// Command-line front end: parse instance files, run the growth analyses,
// and emit machine-readable reports and m_n tables.
//
// Exit codes: 0 success, 2 input error, 3 internal invariant violation,
// 4 inconclusive under the given budgets.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "growthdeg/growth.hpp"
#include "growthdeg/io.hpp"
#include "growthdeg/regseq.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitInconclusive = 4;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw growthdeg::ParseError("cannot open input file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw growthdeg::ParseError("cannot open output file '" + out_path + "'");
  }
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::optional<std::string> make_timestamp(bool reproducible) {
  if (reproducible) return std::nullopt;
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return std::string(buf);
}

growthdeg::Word parse_word(const std::string& text) {
  growthdeg::Word word;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      word.push_back(std::stoi(part));
    }
    return word;
  }
  for (char c : text) {
    if (c < '1' || c > '9') {
      throw growthdeg::ParseError(
          "word must be digits 1-9 or comma-separated symbols, got '" + text +
          "'");
    }
    word.push_back(c - '0');
  }
  return word;
}

growthdeg::GeneratorSet load_matrix_set(const std::string& path) {
  const growthdeg::InstanceFile inst =
      growthdeg::parse_instance(read_input(path));
  if (inst.kind != growthdeg::InstanceKind::matrix_set) {
    throw growthdeg::ParseError("'" + path + "' is not a matrix_set instance");
  }
  return *inst.matrix_set;
}

growthdeg::LinRep load_linrep(const std::string& path) {
  const growthdeg::InstanceFile inst =
      growthdeg::parse_instance(read_input(path));
  switch (inst.kind) {
    case growthdeg::InstanceKind::linrep:
      return *inst.linrep;
    case growthdeg::InstanceKind::dfao:
      return growthdeg::from_dfao(*inst.dfao);
    case growthdeg::InstanceKind::matrix_set:
      break;
  }
  throw growthdeg::ParseError("'" + path +
                              "' must be a linrep or dfao instance");
}

struct BudgetFlags {
  growthdeg::Budgets budgets;
  std::string norm = "inf_operator";

  void attach(CLI::App* cmd, bool with_max_n = true) {
    if (with_max_n) {
      cmd->add_option("--max-n", budgets.max_n,
                      "table length for the m_n scan");
    }
    cmd->add_option("--word-budget", budgets.word_budget,
                    "product word-length budget (0 = 2 * dimension)");
    cmd->add_option("--closure-cap", budgets.closure_cap,
                    "element cap for semigroup closures");
    cmd->add_option("--frontier-budget", budgets.frontier_budget,
                    "distinct-product cap per length");
    cmd->add_option("--seq-max-len", budgets.seq_max_len,
                    "word length for sequence scans (0 = auto)");
    cmd->add_option("--norm", norm, "matrix norm")
        ->check(CLI::IsMember({"inf_operator", "frobenius_sq"}));
  }

  growthdeg::Budgets resolve() {
    budgets.norm = norm == "frobenius_sq" ? growthdeg::NormKind::frobenius_sq
                                          : growthdeg::NormKind::inf_operator;
    return budgets;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growth classification for products of integer matrices and "
               "linear representations of regular sequences"};
  app.require_subcommand(1);

  std::string path, out_path, word_text, lambda_text = "1", second_path;
  bool reproducible = false;

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "classify the growth of a matrix_set instance");
  analyze->add_option("path", path, "instance file ('-' for stdin)")
      ->required();
  BudgetFlags analyze_flags;
  analyze_flags.attach(analyze);
  analyze->add_option("--out", out_path, "write the report here");
  analyze->add_flag("--reproducible", reproducible,
                    "omit the timestamp for byte-stable output");

  // mn
  auto* mn = app.add_subcommand("mn", "exact m_n table as CSV");
  mn->add_option("path", path, "instance file ('-' for stdin)")->required();
  BudgetFlags mn_flags;
  mn_flags.attach(mn);
  mn->add_option("--out", out_path, "write the CSV here");

  // regseq
  auto* regseq = app.add_subcommand("regseq", "regular sequence operations");
  regseq->require_subcommand(1);

  auto* rs_eval = regseq->add_subcommand("eval", "evaluate a sequence on a word");
  rs_eval->add_option("path", path, "linrep or dfao instance")->required();
  rs_eval->add_option("word", word_text, "word, e.g. \"112\" or \"1,1,2\"")
      ->required();

  auto* rs_add = regseq->add_subcommand("add", "emit a representation of f + lambda*g");
  rs_add->add_option("f", path, "first instance")->required();
  rs_add->add_option("g", second_path, "second instance")->required();
  rs_add->add_option("--lambda", lambda_text, "scalar coefficient (default 1)");
  rs_add->add_option("--out", out_path, "write the linrep instance here");

  auto* rs_conv = regseq->add_subcommand("conv", "emit a representation of the convolution f * g");
  rs_conv->add_option("f", path, "first instance")->required();
  rs_conv->add_option("g", second_path, "second instance")->required();
  rs_conv->add_option("--out", out_path, "write the linrep instance here");

  auto* rs_min = regseq->add_subcommand("minimize", "emit a minimal equivalent representation");
  rs_min->add_option("path", path, "linrep or dfao instance")->required();
  rs_min->add_option("--out", out_path, "write the linrep instance here");

  auto* rs_growth = regseq->add_subcommand("growth", "growth degree of a sequence");
  rs_growth->add_option("path", path, "linrep or dfao instance")->required();
  BudgetFlags growth_flags;
  growth_flags.attach(rs_growth);
  rs_growth->add_option("--out", out_path, "write the report here");
  rs_growth->add_flag("--reproducible", reproducible,
                      "omit the timestamp for byte-stable output");

  // import-dfao
  auto* import_dfao = app.add_subcommand(
      "import-dfao", "convert a dfao instance to a linrep instance");
  import_dfao->add_option("path", path, "dfao instance")->required();
  import_dfao->add_option("--out", out_path, "write the linrep instance here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      const growthdeg::GeneratorSet gens = load_matrix_set(path);
      const growthdeg::GrowthReport report =
          growthdeg::growth_degree(gens, analyze_flags.resolve());
      const growthdeg::Json j = growthdeg::to_json(
          growthdeg::make_report_file(report, make_timestamp(reproducible)));
      write_output(out_path, j.dump(2));
      return report.verdict == growthdeg::GrowthVerdict::inconclusive
                 ? kExitInconclusive
                 : kExitOk;
    }
    if (*mn) {
      const growthdeg::GeneratorSet gens = load_matrix_set(path);
      const growthdeg::Budgets budgets = mn_flags.resolve();
      const growthdeg::MnTable table = growthdeg::mn_bruteforce(
          gens, budgets.max_n, budgets.norm, budgets.frontier_budget);
      write_output(out_path, growthdeg::mn_to_csv(table));
      return kExitOk;
    }
    if (*rs_eval) {
      const growthdeg::LinRep rep = load_linrep(path);
      const growthdeg::Word word = parse_word(word_text);
      write_output(out_path, growthdeg::to_string(growthdeg::eval(rep, word)));
      return kExitOk;
    }
    if (*rs_add) {
      const growthdeg::LinRep f = load_linrep(path);
      const growthdeg::LinRep g = load_linrep(second_path);
      const growthdeg::Rational lambda = growthdeg::parse_rational(lambda_text);
      const growthdeg::Json j =
          growthdeg::linrep_to_instance(growthdeg::add(f, g, lambda));
      write_output(out_path, j.dump(2));
      return kExitOk;
    }
    if (*rs_conv) {
      const growthdeg::LinRep f = load_linrep(path);
      const growthdeg::LinRep g = load_linrep(second_path);
      const growthdeg::Json j =
          growthdeg::linrep_to_instance(growthdeg::convolve(f, g));
      write_output(out_path, j.dump(2));
      return kExitOk;
    }
    if (*rs_min) {
      const growthdeg::LinRep rep = load_linrep(path);
      const growthdeg::Json j =
          growthdeg::linrep_to_instance(growthdeg::minimize(rep));
      write_output(out_path, j.dump(2));
      return kExitOk;
    }
    if (*rs_growth) {
      const growthdeg::LinRep rep = load_linrep(path);
      const growthdeg::SeqGrowthReport report =
          growthdeg::growth_degree_seq(rep, growth_flags.resolve());
      const growthdeg::Json j = growthdeg::seq_report_to_json(
          report, make_timestamp(reproducible));
      write_output(out_path, j.dump(2));
      return report.verdict == growthdeg::SeqVerdict::inconclusive
                 ? kExitInconclusive
                 : kExitOk;
    }
    if (*import_dfao) {
      const growthdeg::InstanceFile inst =
          growthdeg::parse_instance(read_input(path));
      if (inst.kind != growthdeg::InstanceKind::dfao) {
        throw growthdeg::ParseError("'" + path + "' is not a dfao instance");
      }
      const growthdeg::Json j = growthdeg::linrep_to_instance(
          growthdeg::from_dfao(*inst.dfao), inst.labels);
      write_output(out_path, j.dump(2));
      return kExitOk;
    }
  } catch (const growthdeg::ParseError& e) {
    if (e.line > 0) {
      std::cerr << "error: line " << e.line << ", column " << e.col << ": "
                << e.what() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kExitInput;
  } catch (const growthdeg::InvariantViolation& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
