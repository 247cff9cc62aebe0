#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "osc/law_parser.hpp"
#include "osc/sim/checks.hpp"
#include "osc/sim/scenario.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int run_checks(const osc::sim::Trace& trace, const std::string& suite_arg) {
  std::vector<std::string> suites;
  if (suite_arg != "all") suites = split_csv(suite_arg);
  auto results = osc::sim::check_trace(trace, suites);
  bool ok = osc::sim::all_pass(results);
  for (const auto& r : results) {
    std::cout << r.name << ": " << (r.pass ? "PASS" : "FAIL");
    if (!r.pass) {
      std::cout << " (" << r.detail;
      if (!r.offending.empty()) std::cout << ", first at record " << r.offending.front();
      std::cout << ")";
    }
    std::cout << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"law-governed community simulator"};
  app.require_subcommand(1);

  std::string scenario_path, trace_out, transport = "sim", suite_arg = "all";
  std::string trace_path, law_path;
  std::int64_t seed = -1;
  bool check_after = false, print_hash = false;

  auto* run = app.add_subcommand("run", "run a scenario and emit its trace");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--trace", trace_out, "write the trace here instead of stdout");
  run->add_option("--transport", transport, "sim or socket")
      ->check(CLI::IsMember({"sim", "socket"}));
  run->add_flag("--check", check_after, "run all invariant suites on the trace");

  auto* check = app.add_subcommand("check", "run invariant suites over a trace");
  check->add_option("trace", trace_path, "trace file")->required();
  check->add_option("--suite", suite_arg, "all or a comma-separated list");

  auto* fmt = app.add_subcommand("fmt", "canonicalize a law file");
  fmt->add_option("law", law_path, "law file")->required();
  fmt->add_flag("--hash", print_hash, "print the law hash instead of the text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      osc::sim::Scenario sc = osc::sim::load_scenario_file(scenario_path);
      std::optional<std::uint64_t> seed_override;
      if (seed >= 0) seed_override = static_cast<std::uint64_t>(seed);
      std::optional<osc::sim::Transport> tp;
      if (run->count("--transport"))
        tp = transport == "socket" ? osc::sim::Transport::Socket
                                   : osc::sim::Transport::Sim;
      osc::sim::Trace trace = osc::sim::run_scenario(sc, seed_override, tp);
      if (trace_out.empty()) {
        std::cout << trace.serialize();
      } else {
        std::ofstream out(trace_out);
        if (!out) throw std::runtime_error("cannot write: " + trace_out);
        out << trace.serialize();
        std::cout << "trace: " << trace_out << " (" << trace.records().size()
                  << " records)\n";
      }
      if (check_after) return run_checks(trace, "all");
      return 0;
    }
    if (check->parsed()) {
      osc::sim::Trace trace = osc::sim::Trace::parse(slurp(trace_path));
      return run_checks(trace, suite_arg);
    }
    // fmt
    auto law = osc::load_law_file(law_path);
    if (print_hash)
      std::cout << law->hash() << "\n";
    else
      std::cout << law->canonical_text();
    return 0;
  } catch (const osc::ParseError& e) {
    std::cerr << "parse error at " << e.line << ":" << e.col << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
