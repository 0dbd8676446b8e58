#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mdkit/geometry.hpp"
#include "mdkit/problems.hpp"
#include "mdkit/schedule.hpp"

namespace mdkit {

/// Parse or validation failure; `line` is 0 when the problem is not tied
/// to a single line (e.g. a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& msg);
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

enum class RunMode { central, distributed };
enum class InitMode { shared, independent };

/// One experiment. Text form is flat `key = value` lines grouped under
/// `[section]` headers; `#` and `;` start comments. See README for keys.
struct ExperimentConfig {
  RunMode mode = RunMode::central;
  std::vector<MirrorKind> geometries{MirrorKind::negative_entropy};
  std::size_t iters = 10000;
  bool monitor = true;
  std::string trace = "trace.csv";
  std::size_t decimation = 0;
  bool parallel = true;

  ScheduleKind schedule = ScheduleKind::harmonic;
  double schedule_a = 0.2;
  std::vector<double> custom_steps;

  std::size_t problem_rows = 100;
  std::size_t problem_dim = 10;
  std::uint64_t problem_seed = 1;
  std::string problem_file;

  std::size_t graph_nodes = 0;  // 0: one agent per problem row
  std::size_t graph_edges = 0;
  std::uint64_t graph_seed = 1;
  std::string graph_file;
  bool block_assignment = false;

  InitMode init = InitMode::shared;
  std::uint64_t init_seed = 1;

  double grid_step = 1e-2;
  std::size_t reference_iters = 200000;

  bool operator==(const ExperimentConfig&) const = default;

  StepSchedule make_schedule() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_text(const ExperimentConfig& cfg);

/// Reference optimizer for trace gaps. dim ≤ 4 uses the certified grid
/// oracle; larger problems use the best iterate of long entropic and
/// Euclidean runs (tolerance reported as nan).
ReferenceOptimum experiment_reference(const ProblemInstance& p, double grid_step,
                                      std::size_t surrogate_iters);

struct RunOutcome {
  std::string geometry;
  std::filesystem::path trace_file;
  double f_initial = 0.0;
  double final_f_gap = 0.0;
  double final_consensus_error = 0.0;  // nan for central runs
  std::size_t violations = 0;
};

struct ExperimentReport {
  std::vector<RunOutcome> runs;
  double f_star = 0.0;
  bool assumptions_ok = true;
  std::string assumption_summary;

  std::size_t violations() const;
  int exit_code() const { return (!assumptions_ok || violations() > 0) ? 1 : 0; }
};

/// Builds the instance (and graph), runs every configured geometry, writes
/// one trace per geometry and prints a summary to `log`. Relative paths in
/// the config resolve against `base_dir`; when `trace_dir` is set, traces
/// go there under their file names.
ExperimentReport run_experiment(const ExperimentConfig& cfg, std::ostream& log,
                                const std::filesystem::path& base_dir = {},
                                const std::optional<std::filesystem::path>& trace_dir = {});

/// Trace path for one geometry: the configured path when there is a single
/// geometry, else `<stem>_<geometry><ext>`.
std::filesystem::path trace_path_for(const ExperimentConfig& cfg, MirrorKind kind);

}  // namespace mdkit
