// lampi: translate superposition derivation traces (.drv) into kernel-checkable
// Dedukti scripts (.dk) and check them with the embedded kernel.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lampi/dk.hpp"
#include "lampi/drv.hpp"
#include "lampi/errors.hpp"
#include "lampi/kernel.hpp"
#include "lampi/translate.hpp"

namespace {

// Exit codes: 0 success, 1 check failure, 2 budget exhausted, 3 sorry steps
// without --allow-sorry, 4 parse error, 5 internal/corrupted trace.
enum ExitCode {
  kOk = 0,
  kCheckFailed = 1,
  kBudget = 2,
  kSorry = 3,
  kParseError = 4,
  kInternal = 5,
};

struct RunReport {
  size_t steps = 0;
  std::vector<uint64_t> sorry_steps;
  size_t entries = 0;
  uint64_t reductions = 0;
  double parse_ms = 0, translate_ms = 0, check_ms = 0;
  std::string status = "ok";
  std::string error;
  std::vector<std::string> warnings;
  int exit_code = kOk;
};

struct Options {
  std::string output;
  std::string emit;
  bool allow_sorry = false;
  uint64_t budget = 10'000'000;
  std::string report_json;
  bool no_banner = false;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const RunReport& r, const Options& opts, bool to_stderr = false) {
  // The report normally goes to stdout; when the script itself is written to
  // stdout the report moves to stderr so redirection stays clean.
  std::ostream& os = to_stderr ? std::cerr : std::cout;
  os << "steps=" << r.steps << "\n";
  os << "sorries=" << r.sorry_steps.size() << "\n";
  os << "entries=" << r.entries << "\n";
  os << "reductions=" << r.reductions << "\n";
  os << "parse_ms=" << (long)r.parse_ms << "\n";
  os << "translate_ms=" << (long)r.translate_ms << "\n";
  os << "check_ms=" << (long)r.check_ms << "\n";
  os << "status=" << r.status << "\n";
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
  if (!opts.report_json.empty()) {
    nlohmann::json j;
    j["steps"] = r.steps;
    j["sorries"] = r.sorry_steps;
    j["entries"] = r.entries;
    j["reductions"] = r.reductions;
    j["parse_ms"] = r.parse_ms;
    j["translate_ms"] = r.translate_ms;
    j["check_ms"] = r.check_ms;
    j["status"] = r.status;
    j["warnings"] = r.warnings;
    j["error"] = r.error;
    j["exit_code"] = r.exit_code;
    std::ofstream out(opts.report_json, std::ios::binary);
    out << j.dump(2) << "\n";
  }
}

int finish(RunReport& r, const Options& opts, bool report_to_stderr = false) {
  print_report(r, opts, report_to_stderr);
  return r.exit_code;
}

bool do_translate(const std::string& path, const Options& opts, RunReport& r,
                  lampi::translate::Translation& out) {
  auto text = read_file(path);
  if (!text) {
    r.status = "parse_error";
    r.error = "cannot read " + path;
    r.exit_code = kParseError;
    return false;
  }
  auto t0 = std::chrono::steady_clock::now();
  lampi::trace::TraceDocument doc;
  try {
    doc = lampi::io::parse_trace(*text);
  } catch (const lampi::ParseError& e) {
    r.status = "parse_error";
    r.error = e.what();
    r.exit_code = kParseError;
    return false;
  }
  r.parse_ms = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  try {
    out = lampi::translate::translate(doc);
  } catch (const std::exception& e) {
    r.status = "internal_error";
    r.error = e.what();
    r.exit_code = kInternal;
    return false;
  }
  r.translate_ms = ms_since(t0);
  r.steps = out.steps;
  for (const auto& s : out.sorries) {
    r.sorry_steps.push_back(s.step);
    r.warnings.push_back("sorry: step " + std::to_string(s.step) + " rule " + s.rule);
  }
  for (const auto& n : out.notes) r.warnings.push_back(n);
  r.entries = out.doc.size();
  return true;
}

// Applies the sorry gate shared by every command.
void sorry_gate(RunReport& r, const Options& opts) {
  if (!r.sorry_steps.empty() && !opts.allow_sorry && r.exit_code == kOk) {
    r.status = "sorry";
    r.exit_code = kSorry;
  }
}

void run_check(const lampi::kernel::Document& doc, const Options& opts, RunReport& r) {
  auto t0 = std::chrono::steady_clock::now();
  lampi::kernel::CheckOptions copts;
  copts.budget = opts.budget;
  try {
    lampi::kernel::CheckReport rep = lampi::kernel::check_document(doc, copts);
    r.check_ms = ms_since(t0);
    r.reductions = rep.reductions;
    r.entries = rep.entries.size();
    if (!rep.ok) {
      r.status = "check_failed";
      r.error = rep.first_error;
      r.exit_code = kCheckFailed;
    }
  } catch (const lampi::kernel::BudgetExhausted& e) {
    r.check_ms = ms_since(t0);
    r.reductions = opts.budget;
    r.status = "budget_exhausted";
    r.error = e.what();
    r.exit_code = kBudget;
  }
}

int cmd_translate(const std::string& input, const Options& opts) {
  RunReport r;
  lampi::translate::Translation tr;
  if (!do_translate(input, opts, r, tr)) return finish(r, opts);
  lampi::io::DkPrintOptions popts;
  if (!opts.no_banner) popts.comments = tr.comments;
  std::string script = lampi::io::print_dk(tr.doc, popts);
  bool to_stdout = opts.output.empty() || opts.output == "-";
  if (to_stdout) {
    std::cout << script;
  } else {
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) {
      r.status = "internal_error";
      r.error = "cannot write " + opts.output;
      r.exit_code = kInternal;
      return finish(r, opts);
    }
    out << script;
  }
  sorry_gate(r, opts);
  return finish(r, opts, to_stdout);
}

int cmd_check(const std::string& input, const Options& opts) {
  RunReport r;
  auto text = read_file(input);
  if (!text) {
    r.status = "parse_error";
    r.error = "cannot read " + input;
    r.exit_code = kParseError;
    return finish(r, opts);
  }
  auto t0 = std::chrono::steady_clock::now();
  lampi::kernel::Document doc;
  try {
    doc = lampi::io::parse_dk(*text);
  } catch (const lampi::ParseError& e) {
    r.status = "parse_error";
    r.error = e.what();
    r.exit_code = kParseError;
    return finish(r, opts);
  }
  r.parse_ms = ms_since(t0);
  for (const auto& item : doc) {
    if (!std::holds_alternative<lampi::kernel::SignatureEntry>(item)) continue;
    const auto& e = std::get<lampi::kernel::SignatureEntry>(item);
    if (e.name.rfind("sorry_", 0) == 0) {
      r.sorry_steps.push_back(std::strtoull(e.name.c_str() + 6, nullptr, 10));
      r.warnings.push_back("sorry axiom present: " + e.name);
    }
  }
  run_check(doc, opts, r);
  sorry_gate(r, opts);
  return finish(r, opts);
}

int cmd_e2e(const std::string& input, const Options& opts) {
  RunReport r;
  lampi::translate::Translation tr;
  if (!do_translate(input, opts, r, tr)) return finish(r, opts);
  if (!opts.emit.empty()) {
    lampi::io::DkPrintOptions popts;
    if (!opts.no_banner) popts.comments = tr.comments;
    std::ofstream out(opts.emit, std::ios::binary);
    out << lampi::io::print_dk(tr.doc, popts);
  }
  run_check(tr.doc, opts, r);
  sorry_gate(r, opts);
  return finish(r, opts);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translate derivation traces to kernel-checkable scripts"};
  app.require_subcommand(1);

  Options opts;
  if (const char* env = std::getenv("LAMPI_BUDGET")) opts.budget = std::strtoull(env, nullptr, 10);

  std::string input;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "input file")->required();
    cmd->add_flag("--allow-sorry", opts.allow_sorry, "accept scripts with sorry axioms");
    cmd->add_option("--budget", opts.budget, "reduction step budget");
    cmd->add_option("--report-json", opts.report_json, "write a JSON report to this path");
    cmd->add_flag("--no-prelude-banner", opts.no_banner, "omit section banner comments");
  };

  CLI::App* translate = app.add_subcommand("translate", "translate a .drv trace to .dk");
  add_common(translate);
  translate->add_option("--output,-o", opts.output, "output path (default stdout)");

  CLI::App* check = app.add_subcommand("check", "check an emitted .dk script");
  add_common(check);

  CLI::App* e2e = app.add_subcommand("e2e", "translate and check in memory");
  add_common(e2e);
  e2e->add_option("--emit", opts.emit, "also write the .dk script here");

  CLI11_PARSE(app, argc, argv);

  if (translate->parsed()) return cmd_translate(input, opts);
  if (check->parsed()) return cmd_check(input, opts);
  if (e2e->parsed()) return cmd_e2e(input, opts);
  return kInternal;
}
