#include "mdkit/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "mdkit/format.hpp"
#include "mdkit/network.hpp"
#include "mdkit/solver_central.hpp"
#include "mdkit/solver_dist.hpp"
#include "mdkit/trace_io.hpp"

namespace mdkit {

namespace fs = std::filesystem;

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& msg)
    : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? std::string() : field + ": ") + msg),
      line_(line),
      field_(std::move(field)) {}

StepSchedule ExperimentConfig::make_schedule() const {
  switch (schedule) {
    case ScheduleKind::harmonic:
      return StepSchedule::harmonic(schedule_a);
    case ScheduleKind::sqrt_decay:
      return StepSchedule::sqrt_decay(schedule_a);
    case ScheduleKind::custom:
      return StepSchedule::custom(custom_steps);
  }
  throw std::logic_error("unreachable schedule kind");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    const auto item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  std::size_t line;
};

class Fields {
 public:
  explicit Fields(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry& get(const std::string& key) const { return entries_.at(key); }

  template <class Parse>
  void read(const std::string& key, Parse&& parse) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return;
    try {
      parse(std::string_view(it->second.value));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(it->second.line, key, e.what());
    }
  }

 private:
  std::map<std::string, Entry> entries_;
};

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("expected a nonnegative integer, got '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  if (!parse_real(s, v))
    throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
  return v;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw std::invalid_argument("expected true/false, got '" + std::string(s) + "'");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment.mode",    "experiment.geometry",  "experiment.iters",
      "experiment.monitor", "experiment.trace",     "experiment.decimation",
      "experiment.parallel", "schedule.kind",       "schedule.a",
      "schedule.steps",     "problem.rows",         "problem.dim",
      "problem.seed",       "problem.file",         "graph.nodes",
      "graph.edges",        "graph.seed",           "graph.file",
      "graph.assignment",   "init.mode",            "init.seed",
      "reference.grid_step", "reference.iters"};
  return keys;
}

void validate(const ExperimentConfig& c, const Fields& f) {
  auto line_of = [&](const std::string& key) { return f.has(key) ? f.get(key).line : 0; };
  if (c.iters < 1) throw ConfigError(line_of("experiment.iters"), "experiment.iters", "must be >= 1");
  if (c.geometries.empty())
    throw ConfigError(line_of("experiment.geometry"), "experiment.geometry", "no geometry given");
  if (c.schedule == ScheduleKind::custom && c.custom_steps.empty())
    throw ConfigError(line_of("schedule.steps"), "schedule.steps",
                      "custom schedule needs a step list");
  if (c.schedule != ScheduleKind::custom && !(c.schedule_a > 0.0))
    throw ConfigError(line_of("schedule.a"), "schedule.a", "must be positive");
  if (c.problem_file.empty() && (c.problem_rows < 1 || c.problem_dim < 2))
    throw ConfigError(line_of("problem.dim"), "problem", "need rows >= 1 and dim >= 2");
  if (!(c.grid_step > 0.0) || c.grid_step > 1e-2)
    throw ConfigError(line_of("reference.grid_step"), "reference.grid_step",
                      "must be in (0, 0.01]");
  if (c.mode == RunMode::distributed) {
    if (c.graph_file.empty() && c.graph_edges == 0)
      throw ConfigError(0, "graph", "distributed mode needs graph.edges or graph.file");
    if (c.problem_file.empty() && c.graph_nodes != 0 && c.graph_nodes != c.problem_rows &&
        !c.block_assignment)
      throw ConfigError(line_of("graph.nodes"), "graph.nodes",
                        "agent count must match problem.rows unless assignment = blocks");
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "", "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw ConfigError(line_no, "", "empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
    if (section.empty()) throw ConfigError(line_no, key, "key outside of any [section]");
    std::string full = section + "." + (key == "rounds" && section == "experiment" ? "iters" : key);
    if (!known_keys().count(full)) throw ConfigError(line_no, full, "unknown key");
    if (entries.count(full)) throw ConfigError(line_no, full, "duplicate key");
    entries.emplace(full, Entry{std::string(trim(line.substr(eq + 1))), line_no});
  }

  if (!entries.count("experiment.mode"))
    throw ConfigError(0, "experiment.mode", "required key missing (empty config?)");

  const Fields f(std::move(entries));
  ExperimentConfig c;
  f.read("experiment.mode", [&](std::string_view v) {
    if (v == "central") c.mode = RunMode::central;
    else if (v == "distributed") c.mode = RunMode::distributed;
    else throw std::invalid_argument("expected central or distributed");
  });
  f.read("experiment.geometry", [&](std::string_view v) {
    c.geometries.clear();
    for (auto item : split_list(v)) {
      const auto kind = parse_mirror_kind(item);
      if (std::find(c.geometries.begin(), c.geometries.end(), kind) != c.geometries.end())
        throw std::invalid_argument("geometry listed twice");
      c.geometries.push_back(kind);
    }
  });
  f.read("experiment.iters", [&](std::string_view v) { c.iters = parse_uint(v); });
  f.read("experiment.monitor", [&](std::string_view v) { c.monitor = parse_bool(v); });
  f.read("experiment.trace", [&](std::string_view v) {
    if (v.empty()) throw std::invalid_argument("empty path");
    c.trace = std::string(v);
  });
  f.read("experiment.decimation", [&](std::string_view v) { c.decimation = parse_uint(v); });
  f.read("experiment.parallel", [&](std::string_view v) { c.parallel = parse_bool(v); });
  f.read("schedule.kind", [&](std::string_view v) { c.schedule = parse_schedule_kind(v); });
  f.read("schedule.a", [&](std::string_view v) { c.schedule_a = parse_double(v); });
  f.read("schedule.steps", [&](std::string_view v) {
    c.custom_steps.clear();
    for (auto item : split_list(v)) c.custom_steps.push_back(parse_double(item));
  });
  f.read("problem.rows", [&](std::string_view v) { c.problem_rows = parse_uint(v); });
  f.read("problem.dim", [&](std::string_view v) { c.problem_dim = parse_uint(v); });
  f.read("problem.seed", [&](std::string_view v) { c.problem_seed = parse_uint(v); });
  f.read("problem.file", [&](std::string_view v) { c.problem_file = std::string(v); });
  f.read("graph.nodes", [&](std::string_view v) { c.graph_nodes = parse_uint(v); });
  f.read("graph.edges", [&](std::string_view v) { c.graph_edges = parse_uint(v); });
  f.read("graph.seed", [&](std::string_view v) { c.graph_seed = parse_uint(v); });
  f.read("graph.file", [&](std::string_view v) { c.graph_file = std::string(v); });
  f.read("graph.assignment", [&](std::string_view v) {
    if (v == "rows") c.block_assignment = false;
    else if (v == "blocks") c.block_assignment = true;
    else throw std::invalid_argument("expected rows or blocks");
  });
  f.read("init.mode", [&](std::string_view v) {
    if (v == "shared") c.init = InitMode::shared;
    else if (v == "independent") c.init = InitMode::independent;
    else throw std::invalid_argument("expected shared or independent");
  });
  f.read("init.seed", [&](std::string_view v) { c.init_seed = parse_uint(v); });
  f.read("reference.grid_step", [&](std::string_view v) { c.grid_step = parse_double(v); });
  f.read("reference.iters", [&](std::string_view v) { c.reference_iters = parse_uint(v); });
  validate(c, f);
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "mode = " << (c.mode == RunMode::central ? "central" : "distributed") << '\n';
  os << "geometry = ";
  for (std::size_t i = 0; i < c.geometries.size(); ++i)
    os << (i ? ", " : "") << to_string(c.geometries[i]);
  os << '\n';
  os << "iters = " << c.iters << '\n';
  os << "monitor = " << (c.monitor ? "true" : "false") << '\n';
  os << "trace = " << c.trace << '\n';
  os << "decimation = " << c.decimation << '\n';
  os << "parallel = " << (c.parallel ? "true" : "false") << '\n';
  os << "\n[schedule]\n";
  os << "kind = " << to_string(c.schedule) << '\n';
  os << "a = " << fmt_real(c.schedule_a) << '\n';
  if (!c.custom_steps.empty()) {
    os << "steps = ";
    for (std::size_t i = 0; i < c.custom_steps.size(); ++i)
      os << (i ? ", " : "") << fmt_real(c.custom_steps[i]);
    os << '\n';
  }
  os << "\n[problem]\n";
  os << "rows = " << c.problem_rows << '\n';
  os << "dim = " << c.problem_dim << '\n';
  os << "seed = " << c.problem_seed << '\n';
  if (!c.problem_file.empty()) os << "file = " << c.problem_file << '\n';
  os << "\n[graph]\n";
  os << "nodes = " << c.graph_nodes << '\n';
  os << "edges = " << c.graph_edges << '\n';
  os << "seed = " << c.graph_seed << '\n';
  if (!c.graph_file.empty()) os << "file = " << c.graph_file << '\n';
  os << "assignment = " << (c.block_assignment ? "blocks" : "rows") << '\n';
  os << "\n[init]\n";
  os << "mode = " << (c.init == InitMode::shared ? "shared" : "independent") << '\n';
  os << "seed = " << c.init_seed << '\n';
  os << "\n[reference]\n";
  os << "grid_step = " << fmt_real(c.grid_step) << '\n';
  os << "iters = " << c.reference_iters << '\n';
  return os.str();
}

ReferenceOptimum experiment_reference(const ProblemInstance& p, double grid_step,
                                      std::size_t surrogate_iters) {
  if (p.dim() <= 4) return reference_optimum(p, grid_step);
  const Point centre(std::vector<double>(p.dim(), 1.0 / static_cast<double>(p.dim())));
  const auto sched = StepSchedule::harmonic(0.2);
  ReferenceOptimum best{centre, objective(p, centre),
                        std::numeric_limits<double>::quiet_NaN()};
  for (const auto map : {MirrorMap::negative_entropy(), MirrorMap::euclidean()}) {
    const RunTrace t =
        run_md(p, map, sched, centre, std::max<std::size_t>(surrogate_iters, 1), std::nullopt,
               false, {surrogate_iters, std::nullopt});
    if (t.best_f < best.f_star) {
      best.f_star = t.best_f;
      best.x_star = t.best_point;
    }
  }
  return best;
}

std::size_t ExperimentReport::violations() const {
  std::size_t v = 0;
  for (const auto& r : runs) v += r.violations;
  return v;
}

fs::path trace_path_for(const ExperimentConfig& cfg, MirrorKind kind) {
  fs::path path(cfg.trace);
  if (cfg.geometries.size() <= 1) return path;
  fs::path name = path.stem();
  name += "_";
  name += std::string(to_string(kind));
  name += path.extension();
  return path.parent_path() / name;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, std::ostream& log,
                                const fs::path& base_dir,
                                const std::optional<fs::path>& trace_dir) {
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    return (path.is_relative() && !base_dir.empty()) ? base_dir / path : path;
  };
  auto open_input = [&](const std::string& p, const char* what) {
    const fs::path path = resolve(p);
    std::ifstream in(path);
    if (!in) throw ConfigError(0, what, "cannot open '" + path.string() + "'");
    return in;
  };

  std::optional<ProblemInstance> problem;
  if (!cfg.problem_file.empty()) {
    auto in = open_input(cfg.problem_file, "problem.file");
    problem.emplace(read_instance(in));
  } else {
    problem.emplace(generate_instance(cfg.problem_rows, cfg.problem_dim, cfg.problem_seed));
  }
  const ProblemInstance& p = *problem;
  const StepSchedule sched = cfg.make_schedule();

  ExperimentReport report;
  std::optional<MixingMatrix> mixing;
  std::optional<AgentPartition> partition;
  if (cfg.mode == RunMode::distributed) {
    std::optional<Graph> graph;
    if (!cfg.graph_file.empty()) {
      auto in = open_input(cfg.graph_file, "graph.file");
      graph.emplace(read_graph(in));
    } else {
      const std::size_t nodes = cfg.graph_nodes ? cfg.graph_nodes : p.rows();
      graph.emplace(generate_graph(nodes, cfg.graph_edges, cfg.graph_seed));
    }
    if (graph->nodes() == p.rows() && !cfg.block_assignment) {
      partition = AgentPartition::one_row_per_agent(p.rows());
    } else if (cfg.block_assignment) {
      partition = AgentPartition::blocks(p.rows(), graph->nodes());
    } else {
      throw ConfigError(0, "graph", "graph has " + std::to_string(graph->nodes()) +
                                        " nodes but the problem has " +
                                        std::to_string(p.rows()) + " rows");
    }
    try {
      mixing.emplace(metropolis_weights(*graph));
    } catch (const std::exception& e) {
      report.assumptions_ok = false;
      report.assumption_summary = e.what();
      log << "assumptions: FAILED (" << e.what() << ")\n";
      return report;
    }
    const AssumptionReport ar = verify_assumptions(*mixing);
    report.assumptions_ok = ar.all_pass();
    report.assumption_summary = ar.summary();
    log << "graph: nodes=" << graph->nodes() << " edges=" << graph->edge_count() << '\n';
    log << "assumptions: " << (ar.all_pass() ? "ok" : "FAILED") << " (" << ar.summary() << ")\n";
    if (!ar.all_pass()) return report;
  }

  const ReferenceOptimum ref = experiment_reference(p, cfg.grid_step, cfg.reference_iters);
  report.f_star = ref.f_star;
  log << "problem: rows=" << p.rows() << " dim=" << p.dim() << " L=" << fmt_real(p.lipschitz())
      << '\n';
  log << "reference: f_star=" << fmt_real(ref.f_star)
      << (p.dim() <= 4 ? " (grid oracle)" : " (best iterate of long runs)") << '\n';

  for (const MirrorKind kind : cfg.geometries) {
    const MirrorMap map = kind == MirrorKind::euclidean ? MirrorMap::euclidean()
                                                       : MirrorMap::negative_entropy();
    fs::path out = trace_path_for(cfg, kind);
    out = trace_dir ? *trace_dir / out.filename() : resolve(out.string());
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::ofstream os(out);
    if (!os) throw ConfigError(0, "experiment.trace", "cannot write '" + out.string() + "'");

    RunOutcome o;
    o.geometry = std::string(to_string(kind));
    o.trace_file = out;
    if (cfg.mode == RunMode::central) {
      const Point x0 = random_simplex_point(p.dim(), cfg.init_seed);
      const RunTrace t = run_md(p, map, sched, x0, cfg.iters, ref, cfg.monitor,
                                {cfg.decimation, std::nullopt});
      write_trace(os, t);
      o.f_initial = t.records.front().f_value;
      o.final_f_gap = t.final_f_gap;
      o.final_consensus_error = std::numeric_limits<double>::quiet_NaN();
      o.violations = t.monitor_violations;
    } else {
      std::vector<Point> x0;
      for (std::size_t i = 0; i < partition->agents(); ++i)
        x0.push_back(random_simplex_point(
            p.dim(), cfg.init == InitMode::shared ? cfg.init_seed : cfg.init_seed + i));
      DistOptions opts;
      opts.decimation = cfg.decimation;
      opts.execution = cfg.parallel ? Execution::parallel : Execution::serial;
      opts.partition = partition;
      const DistTrace t = run_dmd(p, map, sched, *mixing, x0, cfg.iters, ref, cfg.monitor, opts);
      write_trace(os, t);
      o.f_initial = t.records.front().f_centroid;
      o.final_f_gap = t.final_f_gap;
      o.final_consensus_error = t.final_consensus_error;
      o.violations = t.violations();
    }
    log << o.geometry << ": f0=" << fmt_real(o.f_initial) << " final_f_gap=" << fmt_real(o.final_f_gap);
    if (cfg.mode == RunMode::distributed)
      log << " consensus_error=" << fmt_real(o.final_consensus_error);
    log << " monitor_violations=" << o.violations << " trace=" << out.string() << '\n';
    report.runs.push_back(std::move(o));
  }
  return report;
}

}  // namespace mdkit
