#include "mdkit/kernels.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>


namespace mdkit {

AgentPartition AgentPartition::one_row_per_agent(std::size_t rows) {
  AgentPartition p;
  for (std::size_t i = 0; i < rows; ++i) p.ranges_.emplace_back(i, i + 1);
  return p;
}

AgentPartition AgentPartition::blocks(std::size_t rows, std::size_t agents) {
  if (agents == 0 || agents > rows)
    throw std::invalid_argument("partition: need 1 <= agents <= rows");
  AgentPartition p;
  for (std::size_t i = 0; i < agents; ++i)
    p.ranges_.emplace_back(i * rows / agents, (i + 1) * rows / agents);
  return p;
}

namespace kernels {

namespace {

inline void mix_row(const MixingMatrix& A, const AgentMatrix& X, AgentMatrix& V, std::size_t i) {
  auto out = V.row(i);
  std::fill(out.begin(), out.end(), 0.0);
  const auto cols = A.row_cols(i);
  const auto vals = A.row_vals(i);
  for (std::size_t t = 0; t < cols.size(); ++t) {
    const auto x = X.row(cols[t]);
    const double a = vals[t];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += a * x[j];
  }
}

inline void local_step_row(const ProblemInstance& p, const AgentPartition& part,
                           const MirrorMap& map, const AgentMatrix& V, double alpha,
                           AgentMatrix& X_next, std::span<double> step_norms,
                           std::span<double> g, std::size_t i) {
  const auto [first, last] = part.rows_of(i);
  const auto v = V.row(i);
  block_subgradient(p, first, last, v, g);
  auto out = X_next.row(i);
  mirror_step(map, v, g, alpha, out);
  step_norms[i] = distance(v, out);
}

double pair_dist(const AgentMatrix& X, std::size_t i, std::size_t j) {
  return distance(X.row(i), X.row(j));
}

}  // namespace

void mix_serial(const MixingMatrix& A, const AgentMatrix& X, AgentMatrix& V) {
  for (std::size_t i = 0; i < X.agents; ++i) mix_row(A, X, V, i);
}

void mix_parallel(const MixingMatrix& A, const AgentMatrix& X, AgentMatrix& V) {
  const auto n = static_cast<std::ptrdiff_t>(X.agents);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) mix_row(A, X, V, static_cast<std::size_t>(i));
}

void local_steps_serial(const ProblemInstance& p, const AgentPartition& part,
                        const MirrorMap& map, const AgentMatrix& V, double alpha,
                        AgentMatrix& X_next, std::span<double> step_norms) {
  std::vector<double> g(V.dim);
  for (std::size_t i = 0; i < V.agents; ++i)
    local_step_row(p, part, map, V, alpha, X_next, step_norms, g, i);
}

void local_steps_parallel(const ProblemInstance& p, const AgentPartition& part,
                          const MirrorMap& map, const AgentMatrix& V, double alpha,
                          AgentMatrix& X_next, std::span<double> step_norms) {
  const auto n = static_cast<std::ptrdiff_t>(V.agents);
  std::exception_ptr error;
#pragma omp parallel
  {
    std::vector<double> g(V.dim);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        local_step_row(p, part, map, V, alpha, X_next, step_norms, g,
                       static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(mdkit_local_steps_error)
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

double max_pairwise_serial(const AgentMatrix& X) {
  double best = 0.0;
  for (std::size_t i = 0; i < X.agents; ++i)
    for (std::size_t j = i + 1; j < X.agents; ++j) best = std::max(best, pair_dist(X, i, j));
  return best;
}

double max_pairwise_parallel(const AgentMatrix& X) {
  const auto n = static_cast<std::ptrdiff_t>(X.agents);
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 4) reduction(max : best)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < X.agents; ++j)
      best = std::max(best, pair_dist(X, static_cast<std::size_t>(i), j));
  return best;
}

}  // namespace kernels
}  // namespace mdkit
