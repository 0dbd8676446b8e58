#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mdkit/geometry.hpp"
#include "mdkit/kernels.hpp"
#include "mdkit/network.hpp"
#include "mdkit/point.hpp"
#include "mdkit/problems.hpp"
#include "mdkit/schedule.hpp"

namespace mdkit {

struct AgentState {
  std::size_t id = 0;
  Point x;  // local iterate
  Point v;  // mixed iterate Σⱼ A_ij xʲ
};

struct RoundRecord {
  std::size_t k = 0;
  double alpha = 0.0;
  double f_centroid = 0.0;         // f(x̄_k)
  double f_gap = 0.0;              // f(x̄_k) − f_star
  double consensus_error = 0.0;    // Σᵢ ‖x̄_k − xⁱ_k‖
  double max_pairwise = 0.0;       // maxᵢⱼ ‖xⁱ_k − xʲ_k‖
  double contraction_slack = 0.0;  // for the transition k → k+1; nan when off
};

struct DistTrace {
  std::vector<RoundRecord> records;
  std::vector<Point> final_points;

  double final_f_centroid = 0.0;
  double final_f_gap = 0.0;
  double final_consensus_error = 0.0;
  double final_max_pairwise = 0.0;

  std::size_t contraction_violations = 0;
  std::size_t step_bound_violations = 0;
  double min_contraction_slack = 0.0;
  double min_step_bound_slack = 0.0;

  /// max over K of Σ_{k≤K} α_k f_gap(x̄_k) minus the measured right side
  /// Σᵢ D(x*, xⁱ_0) + L Σ_{k≤K} α_k Σᵢ‖x̄_k − xⁱ_k‖ + N L²/(2μ) Σ_{k≤K} α_k².
  double telescoped_excess = 0.0;

  std::size_t violations() const { return contraction_violations + step_bound_violations; }
};

struct DistOptions {
  std::size_t decimation = 0;  // as in RunOptions
  Execution execution = Execution::parallel;
  /// Row ownership; defaults to one data row per agent.
  std::optional<AgentPartition> partition;
};

inline constexpr double kContractionTolerance = 1e-9;
inline constexpr double kStepBoundTolerance = 1e-10;

class AssumptionFailure : public std::runtime_error {
 public:
  AssumptionFailure(const std::string& what, AssumptionReport report)
      : std::runtime_error(what), report_(report) {}
  const AssumptionReport& report() const { return report_; }

 private:
  AssumptionReport report_;
};

/// Synchronous distributed mirror descent. Each round mixes the frozen
/// iterates, vⁱ = Σⱼ A_ij xʲ, then every agent takes a mirror step from vⁱ
/// along its own block subgradient. Rejects A before round 0 unless
/// verify_assumptions passes. Serial and parallel execution give
/// bit-identical traces.
DistTrace run_dmd(const ProblemInstance& p, const MirrorMap& map, const StepSchedule& sched,
                  const MixingMatrix& A, const std::vector<Point>& x0, std::size_t rounds,
                  const std::optional<ReferenceOptimum>& ref, bool monitor,
                  const DistOptions& opts = {});

/// x̄ = Σᵢ (1/N)·xⁱ accumulated in agent order.
Point centroid(const AgentMatrix& X);

double consensus_error(std::span<const AgentState> states);
double consensus_error(const AgentMatrix& X);

/// RHS − LHS of ‖PX_{k+1}‖₂ ≤ σ₂(A)‖PX_k‖₂ + α N L/μ with P = I − (1/N)11ᵀ.
double check_contraction(const MixingMatrix& A, const AgentMatrix& X_k,
                         const AgentMatrix& X_k1, double alpha, double lipschitz, double mu);

/// α L_i/μ − ‖v − x_next‖₂.
double check_step_bound(const MirrorMap& map, std::span<const double> v,
                        std::span<const double> x_next, double alpha, double lipschitz_i);

/// ‖PX‖₂, the spectral norm of the agent matrix with its column means removed.
double deviation_norm(const AgentMatrix& X);

}  // namespace mdkit
