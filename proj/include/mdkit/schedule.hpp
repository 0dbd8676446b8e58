#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace mdkit {

enum class ScheduleKind { harmonic, sqrt_decay, custom };

/// Positive nonincreasing step sizes α_k, k = 0, 1, ….
///
///   harmonic(a)    α_k = a/(k+1)      square-summable, not summable
///   sqrt_decay(a)  α_k = a/√(k+1)     not square-summable; for comparison runs
///   custom(list)   α_k = list[k]      validated positive and nonincreasing only
///
/// Convergence of the iterates needs Σα_k = ∞ and Σα_k² < ∞. For custom
/// lists that is the caller's responsibility; the list must also cover the
/// whole horizon of a run.
class StepSchedule {
 public:
  static StepSchedule harmonic(double a);
  static StepSchedule sqrt_decay(double a);
  static StepSchedule custom(std::vector<double> steps);

  ScheduleKind kind() const { return kind_; }
  double scale() const { return a_; }

  double alpha(std::size_t k) const;

  /// Throws std::invalid_argument unless α_0..α_{horizon−1} exist and are
  /// positive and nonincreasing.
  void validate(std::size_t horizon) const;

  bool square_summable() const { return kind_ == ScheduleKind::harmonic; }

 private:
  StepSchedule(ScheduleKind kind, double a, std::vector<double> steps)
      : kind_(kind), a_(a), steps_(std::move(steps)) {}

  ScheduleKind kind_;
  double a_;
  std::vector<double> steps_;
};

ScheduleKind parse_schedule_kind(std::string_view name);
std::string_view to_string(ScheduleKind kind);

}  // namespace mdkit
