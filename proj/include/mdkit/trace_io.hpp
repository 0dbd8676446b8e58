#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mdkit/solver_central.hpp"
#include "mdkit/solver_dist.hpp"

namespace mdkit {

inline constexpr std::string_view kCentralTraceHeader =
    "k,alpha,f,f_gap,dist_ref,bregman_ref,step_norm,monitor_slack";
inline constexpr std::string_view kDistTraceHeader =
    "k,alpha,f_centroid,f_gap,consensus_error,max_pairwise,contraction_slack";

void write_trace(std::ostream& os, const RunTrace& trace);
void write_trace(std::ostream& os, const DistTrace& trace);

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed trace file of either kind.
struct TraceTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of `name`; throws TraceFormatError when absent.
  std::size_t column(std::string_view name) const;
};

TraceTable read_trace(std::istream& is);
TraceTable read_trace_file(const std::string& path);

/// First recorded iteration k with f_gap ≤ gap_level, if any.
std::optional<std::size_t> first_hit(const TraceTable& t, double gap_level);

/// First-hit iteration of each trace; −1 when a trace never reaches the level.
std::pair<long long, long long> compare_runs(const TraceTable& a, const TraceTable& b,
                                             double gap_level);
std::pair<long long, long long> compare_runs(const std::string& path_a,
                                             const std::string& path_b, double gap_level);

}  // namespace mdkit
