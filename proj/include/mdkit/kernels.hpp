#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mdkit/geometry.hpp"
#include "mdkit/network.hpp"
#include "mdkit/problems.hpp"

namespace mdkit {

/// Stacked agent iterates, one row of length `dim` per agent.
struct AgentMatrix {
  std::size_t agents = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  AgentMatrix() = default;
  AgentMatrix(std::size_t agents_, std::size_t dim_)
      : agents(agents_), dim(dim_), data(agents_ * dim_, 0.0) {}

  std::span<double> row(std::size_t i) { return std::span<double>(data).subspan(i * dim, dim); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data).subspan(i * dim, dim);
  }
  bool operator==(const AgentMatrix&) const = default;
};

/// Which data rows each agent owns: agent i holds rows [first, last).
class AgentPartition {
 public:
  static AgentPartition one_row_per_agent(std::size_t rows);
  /// Contiguous blocks, sizes differing by at most one.
  static AgentPartition blocks(std::size_t rows, std::size_t agents);

  std::size_t agents() const { return ranges_.size(); }
  std::pair<std::size_t, std::size_t> rows_of(std::size_t agent) const { return ranges_[agent]; }

 private:
  std::vector<std::pair<std::size_t, std::size_t>> ranges_;
};

enum class Execution { serial, parallel };

namespace kernels {

// The serial versions are the reference; the OpenMP versions partition
// agents across threads and give bit-identical output.

/// V = A X over the sparse rows of A, columns in ascending order.
void mix_serial(const MixingMatrix& A, const AgentMatrix& X, AgentMatrix& V);
void mix_parallel(const MixingMatrix& A, const AgentMatrix& X, AgentMatrix& V);

/// X_next[i] = mirror_step(V[i], ∂f_block(i)(V[i]), alpha); step_norms[i]
/// receives ‖V[i] − X_next[i]‖₂.
void local_steps_serial(const ProblemInstance& p, const AgentPartition& part,
                        const MirrorMap& map, const AgentMatrix& V, double alpha,
                        AgentMatrix& X_next, std::span<double> step_norms);
void local_steps_parallel(const ProblemInstance& p, const AgentPartition& part,
                          const MirrorMap& map, const AgentMatrix& V, double alpha,
                          AgentMatrix& X_next, std::span<double> step_norms);

/// max_{i<j} ‖X[i] − X[j]‖₂.
double max_pairwise_serial(const AgentMatrix& X);
double max_pairwise_parallel(const AgentMatrix& X);

inline void mix(Execution e, const MixingMatrix& A, const AgentMatrix& X, AgentMatrix& V) {
  e == Execution::parallel ? mix_parallel(A, X, V) : mix_serial(A, X, V);
}

inline void local_steps(Execution e, const ProblemInstance& p, const AgentPartition& part,
                        const MirrorMap& map, const AgentMatrix& V, double alpha,
                        AgentMatrix& X_next, std::span<double> step_norms) {
  e == Execution::parallel ? local_steps_parallel(p, part, map, V, alpha, X_next, step_norms)
                           : local_steps_serial(p, part, map, V, alpha, X_next, step_norms);
}

inline double max_pairwise(Execution e, const AgentMatrix& X) {
  return e == Execution::parallel ? max_pairwise_parallel(X) : max_pairwise_serial(X);
}

}  // namespace kernels
}  // namespace mdkit
