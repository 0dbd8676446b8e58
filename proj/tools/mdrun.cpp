// mdrun: experiment harness for centralized and distributed mirror descent.
//
//   mdrun run <config>
//   mdrun gen-problem --rows N --dim d --seed s [-o file]
//   mdrun gen-graph --nodes n --edges m --seed s [-o file] [--matrix-out file]
//   mdrun check-matrix <file> [--graph]
//   mdrun compare <trace_a> <trace_b> <gap>
//
// MDRUN_TRACE_DIR, when set, redirects every trace file into that directory.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mdkit/experiment.hpp"
#include "mdkit/format.hpp"
#include "mdkit/network.hpp"
#include "mdkit/problems.hpp"
#include "mdkit/trace_io.hpp"

namespace fs = std::filesystem;
using namespace mdkit;

namespace {

template <class Write>
void emit(const std::string& out, Write&& write) {
  if (out.empty() || out == "-") {
    write(std::cout);
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot write '" + out + "'");
  write(os);
}

int cmd_run(const std::string& config_path) {
  const ExperimentConfig cfg = load_config(config_path);
  std::optional<fs::path> trace_dir;
  if (const char* dir = std::getenv("MDRUN_TRACE_DIR"); dir && *dir) trace_dir = fs::path(dir);
  const ExperimentReport report =
      run_experiment(cfg, std::cout, fs::path(config_path).parent_path(), trace_dir);
  std::cout << "summary: runs=" << report.runs.size() << " violations=" << report.violations()
            << " assumptions=" << (report.assumptions_ok ? "ok" : "FAILED") << '\n';
  return report.exit_code();
}

int cmd_check_matrix(const std::string& path, bool from_graph) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  const MixingMatrix A = from_graph ? metropolis_weights(read_graph(in)) : read_matrix(in);
  const AssumptionReport r = verify_assumptions(A);
  std::cout << "n=" << A.size() << ' ' << r.summary() << '\n';
  std::cout << (r.all_pass() ? "PASS" : "FAIL") << '\n';
  return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mirror descent experiment harness"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Config file")->required();

  std::size_t rows = 100, dim = 10;
  std::uint64_t seed = 1;
  std::string out;
  auto* gen_problem = app.add_subcommand("gen-problem", "Write a random regression instance");
  gen_problem->add_option("--rows", rows, "Number of data rows N")->capture_default_str();
  gen_problem->add_option("--dim", dim, "Dimension d")->capture_default_str();
  gen_problem->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen_problem->add_option("-o,--out", out, "Output file (stdout if omitted)");

  std::size_t nodes = 100, edges = 939;
  std::string matrix_out;
  auto* gen_graph = app.add_subcommand("gen-graph", "Write a random connected graph");
  gen_graph->add_option("--nodes", nodes, "Node count")->capture_default_str();
  gen_graph->add_option("--edges", edges, "Edge count")->capture_default_str();
  gen_graph->add_option("--seed", seed, "Generator seed")->capture_default_str();
  gen_graph->add_option("-o,--out", out, "Edge-list output (stdout if omitted)");
  gen_graph->add_option("--matrix-out", matrix_out, "Also write its Metropolis-Hastings matrix");

  std::string matrix_path;
  bool from_graph = false;
  auto* check = app.add_subcommand("check-matrix", "Verify mixing-matrix assumptions");
  check->add_option("file", matrix_path, "Matrix file (n lines of n numbers)")->required();
  check->add_flag("--graph", from_graph, "Treat the file as an edge list and check its MH matrix");

  std::string trace_a, trace_b, gap_text;
  auto* compare = app.add_subcommand("compare", "First iteration each trace reaches a gap level");
  compare->add_option("trace_a", trace_a)->required();
  compare->add_option("trace_b", trace_b)->required();
  compare->add_option("gap", gap_text)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path);
    if (*gen_problem) {
      const ProblemInstance p = generate_instance(rows, dim, seed);
      emit(out, [&](std::ostream& os) { write_instance(os, p); });
      return 0;
    }
    if (*gen_graph) {
      const Graph g = generate_graph(nodes, edges, seed);
      emit(out, [&](std::ostream& os) { write_graph(os, g); });
      if (!matrix_out.empty()) {
        const MixingMatrix A = metropolis_weights(g);
        emit(matrix_out, [&](std::ostream& os) { write_matrix(os, A); });
      }
      return 0;
    }
    if (*check) return cmd_check_matrix(matrix_path, from_graph);
    if (*compare) {
      double gap = 0.0;
      if (!parse_real(gap_text, gap)) throw std::runtime_error("gap must be a number");
      const auto [a, b] = compare_runs(trace_a, trace_b, gap);
      std::cout << a << ' ' << b << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
