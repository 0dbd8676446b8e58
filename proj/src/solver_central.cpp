#include "mdkit/solver_central.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdkit {

std::size_t decimation_stride(std::size_t iters, std::size_t decimation) {
  if (decimation > 0) return decimation;
  constexpr std::size_t kMaxRecords = 10000;
  if (iters <= kMaxRecords) return 1;
  return (iters + kMaxRecords - 1) / kMaxRecords;
}

double check_step_inequality(const MirrorMap& map, std::span<const double> g,
                             double lipschitz, std::span<const double> x_k,
                             std::span<const double> x_k1, std::span<const double> z,
                             double alpha) {
  const double lhs = bregman(map, z, x_k1).value - bregman(map, z, x_k).value;
  double inner = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) inner += g[j] * (z[j] - x_k[j]);
  const double rhs = alpha * inner + alpha * alpha * lipschitz * lipschitz / (2.0 * map.mu);
  return rhs - lhs;
}

double check_step_inequality(const MirrorMap& map, const ProblemInstance& p,
                             const Point& x_k, const Point& x_k1, const Point& z,
                             double alpha) {
  const auto g = subgradient(p, x_k);
  return check_step_inequality(map, g, p.lipschitz(), x_k, x_k1, z, alpha);
}

RunTrace run_md(const ProblemInstance& p, const MirrorMap& map, const StepSchedule& sched,
                const Point& x0, std::size_t iters,
                const std::optional<ReferenceOptimum>& ref, bool monitor,
                const RunOptions& opts) {
  if (iters < 1) throw std::invalid_argument("run_md: iters must be at least 1");
  if (x0.size() != p.dim()) throw std::invalid_argument("run_md: x0 has wrong dimension");
  if (!on_simplex(x0, 1e-9)) throw std::invalid_argument("run_md: x0 is not on the simplex");
  sched.validate(iters);

  std::optional<Point> z = opts.monitor_point;
  if (!z && ref) z = ref->x_star;
  if (monitor && !z)
    throw std::invalid_argument("run_md: monitor needs a reference or a monitor point");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double L = p.lipschitz();
  const std::size_t stride = decimation_stride(iters, opts.decimation);
  const std::size_t tail_start = iters - (iters + 9) / 10;

  Point x = map.kind == MirrorKind::negative_entropy ? clamp_interior(x0) : x0;
  Point x_next(std::vector<double>(p.dim()));
  std::vector<double> g(p.dim());

  RunTrace trace;
  trace.records.reserve(iters / stride + 2);
  trace.min_monitor_slack = monitor ? std::numeric_limits<double>::infinity() : nan;
  trace.telescoped_excess = ref ? -std::numeric_limits<double>::infinity() : nan;

  const double d0 = ref ? bregman(map, ref->x_star, x).value : nan;
  double weighted_gap = 0.0;
  double alpha_sq = 0.0;
  double tail_bregman_min = std::numeric_limits<double>::infinity();
  double tail_bregman_max = -std::numeric_limits<double>::infinity();

  trace.best_f = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < iters; ++k) {
    const double alpha = sched.alpha(k);
    const double f = objective(p, x);
    if (f < trace.best_f) {
      trace.best_f = f;
      trace.best_point = x;
    }
    block_subgradient(p, 0, p.rows(), x, g);
    mirror_step(map, x, g, alpha, x_next.coords());
    const double step = distance(x_next, x);

    IterRecord rec{k, alpha, f, nan, nan, nan, step, nan};
    if (ref) {
      rec.f_gap = f - ref->f_star;
      rec.dist_to_ref = distance(x, ref->x_star);
      rec.bregman_to_ref = bregman(map, ref->x_star, x).value;
      weighted_gap += alpha * rec.f_gap;
      alpha_sq += alpha * alpha;
      const double excess = weighted_gap - (d0 + L * L / (2.0 * map.mu) * alpha_sq);
      trace.telescoped_excess = std::max(trace.telescoped_excess, excess);
    }
    if (monitor) {
      rec.monitor_slack = check_step_inequality(map, g, L, x, x_next, *z, alpha);
      trace.min_monitor_slack = std::min(trace.min_monitor_slack, rec.monitor_slack);
      if (rec.monitor_slack < -kStepInequalityTolerance) ++trace.monitor_violations;
    }
    if (k >= tail_start) {
      trace.tail_max_step = std::max(trace.tail_max_step, step);
      if (ref) {
        tail_bregman_min = std::min(tail_bregman_min, rec.bregman_to_ref);
        tail_bregman_max = std::max(tail_bregman_max, rec.bregman_to_ref);
      }
    }
    if (k % stride == 0 || k + 1 == iters) trace.records.push_back(rec);
    std::swap(x, x_next);
  }

  trace.tail_bregman_spread = ref ? tail_bregman_max - tail_bregman_min : nan;
  trace.final_f = objective(p, x);
  if (trace.final_f < trace.best_f) {
    trace.best_f = trace.final_f;
    trace.best_point = x;
  }
  trace.final_f_gap = ref ? trace.final_f - ref->f_star : nan;
  trace.final_point = std::move(x);
  return trace;
}

}  // namespace mdkit
