#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mdkit/geometry.hpp"
#include "mdkit/point.hpp"
#include "mdkit/problems.hpp"
#include "mdkit/schedule.hpp"

namespace mdkit {

struct IterRecord {
  std::size_t k = 0;
  double alpha = 0.0;
  double f_value = 0.0;
  double f_gap = 0.0;           // f(x_k) − f_star; nan without a reference
  double dist_to_ref = 0.0;     // ‖x_k − x*‖₂
  double bregman_to_ref = 0.0;  // D_ψ(x*, x_k)
  double step_norm = 0.0;       // ‖x_{k+1} − x_k‖₂
  double monitor_slack = 0.0;   // per-step inequality slack; nan when off
};

struct RunTrace {
  std::vector<IterRecord> records;
  Point final_point;
  double final_f = 0.0;
  double final_f_gap = 0.0;

  /// Lowest objective seen over x_0..x_iters and where it was attained.
  double best_f = 0.0;
  Point best_point;

  std::size_t monitor_violations = 0;
  double min_monitor_slack = 0.0;

  /// Over the last 10% of iterations: max ‖x_{k+1} − x_k‖ and the spread
  /// sup − inf of D_ψ(x*, x_k).
  double tail_max_step = 0.0;
  double tail_bregman_spread = 0.0;

  /// max over K of Σ_{k≤K} α_k f_gap(x_k) − [D_ψ(x*, x_0) + L²/(2μ) Σ_{k≤K} α_k²].
  /// Nonpositive up to rounding whenever the reference is the monitor point.
  double telescoped_excess = 0.0;
};

struct RunOptions {
  /// Record every `decimation`-th iteration; 0 picks 1 below 10⁴
  /// iterations and ⌈iters/10⁴⌉ above.
  std::size_t decimation = 0;
  /// Comparison point for the monitor; defaults to the reference optimizer.
  std::optional<Point> monitor_point;
};

inline constexpr double kStepInequalityTolerance = 1e-9;

std::size_t decimation_stride(std::size_t iters, std::size_t decimation);

/// Centralized mirror descent x_{k+1} = mirror_step(x_k, ∂f(x_k), α_k) for
/// `iters` iterations. The entropic geometry starts from clamp_interior(x0).
/// Monitor violations are counted, never thrown.
RunTrace run_md(const ProblemInstance& p, const MirrorMap& map, const StepSchedule& sched,
                const Point& x0, std::size_t iters,
                const std::optional<ReferenceOptimum>& ref, bool monitor,
                const RunOptions& opts = {});

/// Slack of the per-step descent inequality
///
///   D(z, x_{k+1}) − D(z, x_k) ≤ α⟨g, z − x_k⟩ + α²L²/(2μ),
///
/// returned as RHS − LHS. Passing requires slack ≥ −1e-9.
double check_step_inequality(const MirrorMap& map, std::span<const double> g,
                             double lipschitz, std::span<const double> x_k,
                             std::span<const double> x_k1, std::span<const double> z,
                             double alpha);

/// Same check with g = subgradient(p, x_k) and L = p.lipschitz().
double check_step_inequality(const MirrorMap& map, const ProblemInstance& p,
                             const Point& x_k, const Point& x_k1, const Point& z,
                             double alpha);

}  // namespace mdkit
