#include "mdkit/solver_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdkit/linalg.hpp"
#include "mdkit/solver_central.hpp"

namespace mdkit {

Point centroid(const AgentMatrix& X) {
  std::vector<double> c(X.dim, 0.0);
  const double w = 1.0 / static_cast<double>(X.agents);
  for (std::size_t i = 0; i < X.agents; ++i) {
    const auto x = X.row(i);
    for (std::size_t j = 0; j < X.dim; ++j) c[j] += w * x[j];
  }
  return Point(std::move(c));
}

namespace {

double consensus_error(const AgentMatrix& X, const Point& centre) {
  double s = 0.0;
  for (std::size_t i = 0; i < X.agents; ++i) s += distance(centre, X.row(i));
  return s;
}

}  // namespace

double consensus_error(const AgentMatrix& X) { return consensus_error(X, centroid(X)); }

double consensus_error(std::span<const AgentState> states) {
  if (states.empty()) throw std::invalid_argument("consensus_error: no agents");
  AgentMatrix X(states.size(), states.front().x.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    std::copy(states[i].x.coords().begin(), states[i].x.coords().end(), X.row(i).begin());
  return consensus_error(X);
}

double deviation_norm(const AgentMatrix& X) {
  const Point c = centroid(X);
  std::vector<double> px(X.data.size());
  for (std::size_t i = 0; i < X.agents; ++i)
    for (std::size_t j = 0; j < X.dim; ++j) px[i * X.dim + j] = X.data[i * X.dim + j] - c[j];
  return spectral_norm(X.agents, X.dim, px, {1e-12, 100000});
}

double check_contraction(const MixingMatrix& A, const AgentMatrix& X_k,
                         const AgentMatrix& X_k1, double alpha, double lipschitz, double mu) {
  const double n = static_cast<double>(X_k.agents);
  return A.sigma2() * deviation_norm(X_k) + alpha * n * lipschitz / mu - deviation_norm(X_k1);
}

double check_step_bound(const MirrorMap& map, std::span<const double> v,
                        std::span<const double> x_next, double alpha, double lipschitz_i) {
  return alpha * lipschitz_i / map.mu - distance(v, x_next);
}

DistTrace run_dmd(const ProblemInstance& p, const MirrorMap& map, const StepSchedule& sched,
                  const MixingMatrix& A, const std::vector<Point>& x0, std::size_t rounds,
                  const std::optional<ReferenceOptimum>& ref, bool monitor,
                  const DistOptions& opts) {
  if (rounds < 1) throw std::invalid_argument("run_dmd: rounds must be at least 1");
  const AgentPartition part =
      opts.partition ? *opts.partition : AgentPartition::one_row_per_agent(p.rows());
  const std::size_t n = part.agents();
  if (A.size() != n)
    throw std::invalid_argument("run_dmd: mixing matrix is " + std::to_string(A.size()) +
                                "x" + std::to_string(A.size()) + " but there are " +
                                std::to_string(n) + " agents");
  if (x0.size() != n) throw std::invalid_argument("run_dmd: need one initial point per agent");
  const AssumptionReport report = verify_assumptions(A);
  if (!report.all_pass())
    throw AssumptionFailure("run_dmd: mixing matrix rejected: " + report.summary(), report);
  sched.validate(rounds);

  const std::size_t d = p.dim();
  AgentMatrix X(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (x0[i].size() != d || !on_simplex(x0[i], 1e-9))
      throw std::invalid_argument("run_dmd: initial point of agent " + std::to_string(i) +
                                  " is not on the simplex");
    const Point start = map.kind == MirrorKind::negative_entropy ? clamp_interior(x0[i]) : x0[i];
    std::copy(start.coords().begin(), start.coords().end(), X.row(i).begin());
  }

  std::vector<double> agent_L(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [first, last] = part.rows_of(i);
    for (std::size_t r = first; r < last; ++r) agent_L[i] += p.row_lipschitz(r);
  }
  const double L = *std::max_element(agent_L.begin(), agent_L.end());

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t stride = decimation_stride(rounds, opts.decimation);

  DistTrace trace;
  trace.records.reserve(rounds / stride + 2);
  trace.min_contraction_slack = monitor ? inf : nan;
  trace.min_step_bound_slack = monitor ? inf : nan;
  trace.telescoped_excess = ref ? -inf : nan;

  double d0 = 0.0;
  if (ref)
    for (std::size_t i = 0; i < n; ++i) d0 += bregman(map, ref->x_star, X.row(i)).value;
  double weighted_gap = 0.0;
  double weighted_consensus = 0.0;
  double alpha_sq = 0.0;

  AgentMatrix V(n, d);
  AgentMatrix X_next(n, d);
  std::vector<double> step_norms(n);
  double dev_k = monitor ? deviation_norm(X) : 0.0;

  for (std::size_t k = 0; k < rounds; ++k) {
    const double alpha = sched.alpha(k);
    const Point xbar = centroid(X);
    const double f = objective(p, xbar);
    const double cons = consensus_error(X, xbar);

    kernels::mix(opts.execution, A, X, V);
    kernels::local_steps(opts.execution, p, part, map, V, alpha, X_next, step_norms);

    RoundRecord rec{k, alpha, f, nan, cons, nan, nan};
    if (ref) {
      rec.f_gap = f - ref->f_star;
      weighted_gap += alpha * rec.f_gap;
      weighted_consensus += alpha * cons;
      alpha_sq += alpha * alpha;
      const double rhs = d0 + L * weighted_consensus +
                         static_cast<double>(n) * L * L / (2.0 * map.mu) * alpha_sq;
      trace.telescoped_excess = std::max(trace.telescoped_excess, weighted_gap - rhs);
    }
    if (monitor) {
      for (std::size_t i = 0; i < n; ++i) {
        const double s = alpha * agent_L[i] / map.mu - step_norms[i];
        trace.min_step_bound_slack = std::min(trace.min_step_bound_slack, s);
        if (s < -kStepBoundTolerance) ++trace.step_bound_violations;
      }
      const double dev_next = deviation_norm(X_next);
      rec.contraction_slack =
          A.sigma2() * dev_k + alpha * static_cast<double>(n) * L / map.mu - dev_next;
      trace.min_contraction_slack = std::min(trace.min_contraction_slack, rec.contraction_slack);
      if (rec.contraction_slack < -kContractionTolerance) ++trace.contraction_violations;
      dev_k = dev_next;
    }
    if (k % stride == 0 || k + 1 == rounds) {
      rec.max_pairwise = kernels::max_pairwise(opts.execution, X);
      trace.records.push_back(rec);
    }
    std::swap(X, X_next);
  }

  const Point xbar = centroid(X);
  trace.final_f_centroid = objective(p, xbar);
  trace.final_f_gap = ref ? trace.final_f_centroid - ref->f_star : nan;
  trace.final_consensus_error = consensus_error(X, xbar);
  trace.final_max_pairwise = kernels::max_pairwise(opts.execution, X);
  trace.final_points.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    trace.final_points.emplace_back(std::vector<double>(X.row(i).begin(), X.row(i).end()));
  return trace;
}

}  // namespace mdkit
