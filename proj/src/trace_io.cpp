#include "mdkit/trace_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "mdkit/format.hpp"

namespace mdkit {

void write_trace(std::ostream& os, const RunTrace& trace) {
  os << kCentralTraceHeader << '\n';
  for (const auto& r : trace.records) {
    os << r.k << ',' << fmt_real(r.alpha) << ',' << fmt_real(r.f_value) << ','
       << fmt_real(r.f_gap) << ',' << fmt_real(r.dist_to_ref) << ','
       << fmt_real(r.bregman_to_ref) << ',' << fmt_real(r.step_norm) << ','
       << fmt_real(r.monitor_slack) << '\n';
  }
}

void write_trace(std::ostream& os, const DistTrace& trace) {
  os << kDistTraceHeader << '\n';
  for (const auto& r : trace.records) {
    os << r.k << ',' << fmt_real(r.alpha) << ',' << fmt_real(r.f_centroid) << ','
       << fmt_real(r.f_gap) << ',' << fmt_real(r.consensus_error) << ','
       << fmt_real(r.max_pairwise) << ',' << fmt_real(r.contraction_slack) << '\n';
  }
}

std::size_t TraceTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (columns[c] == name) return c;
  throw TraceFormatError("trace has no column '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TraceTable read_trace(std::istream& is) {
  TraceTable t;
  std::string line;
  if (!std::getline(is, line) || line.empty()) throw TraceFormatError("trace: missing header");
  if (line.back() == '\r') line.pop_back();
  t.columns = split_csv(line);
  if (t.columns.empty() || t.columns.front() != "k")
    throw TraceFormatError("trace: header must start with 'k'");
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != t.columns.size())
      throw TraceFormatError("trace: line " + std::to_string(line_no) + " has " +
                             std::to_string(cells.size()) + " fields, expected " +
                             std::to_string(t.columns.size()));
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (!parse_real(cells[c], row[c]))
        throw TraceFormatError("trace: line " + std::to_string(line_no) + ", field '" +
                               t.columns[c] + "' is not a number");
    if (!t.rows.empty() && !(row[0] > t.rows.back()[0]))
      throw TraceFormatError("trace: line " + std::to_string(line_no) +
                             " breaks increasing k order");
    t.rows.push_back(std::move(row));
  }
  return t;
}

TraceTable read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceFormatError("cannot open trace file '" + path + "'");
  return read_trace(in);
}

std::optional<std::size_t> first_hit(const TraceTable& t, double gap_level) {
  const std::size_t gap = t.column("f_gap");
  for (const auto& row : t.rows)
    if (row[gap] <= gap_level) return static_cast<std::size_t>(row[0]);
  return std::nullopt;
}

std::pair<long long, long long> compare_runs(const TraceTable& a, const TraceTable& b,
                                             double gap_level) {
  auto idx = [&](const TraceTable& t) -> long long {
    const auto hit = first_hit(t, gap_level);
    return hit ? static_cast<long long>(*hit) : -1;
  };
  return {idx(a), idx(b)};
}

std::pair<long long, long long> compare_runs(const std::string& path_a,
                                             const std::string& path_b, double gap_level) {
  return compare_runs(read_trace_file(path_a), read_trace_file(path_b), gap_level);
}

}  // namespace mdkit
