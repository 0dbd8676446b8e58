#include "mdkit/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mdkit {

StepSchedule StepSchedule::harmonic(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("harmonic schedule: a must be positive");
  return StepSchedule(ScheduleKind::harmonic, a, {});
}

StepSchedule StepSchedule::sqrt_decay(double a) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::invalid_argument("sqrt schedule: a must be positive");
  return StepSchedule(ScheduleKind::sqrt_decay, a, {});
}

StepSchedule StepSchedule::custom(std::vector<double> steps) {
  if (steps.empty()) throw std::invalid_argument("custom schedule: empty step list");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (!(steps[k] > 0.0) || !std::isfinite(steps[k]))
      throw std::invalid_argument("custom schedule: step " + std::to_string(k) +
                                  " is not positive");
    if (k > 0 && steps[k] > steps[k - 1])
      throw std::invalid_argument("custom schedule: step " + std::to_string(k) +
                                  " increases");
  }
  return StepSchedule(ScheduleKind::custom, 0.0, std::move(steps));
}

double StepSchedule::alpha(std::size_t k) const {
  switch (kind_) {
    case ScheduleKind::harmonic:
      return a_ / static_cast<double>(k + 1);
    case ScheduleKind::sqrt_decay:
      return a_ / std::sqrt(static_cast<double>(k + 1));
    case ScheduleKind::custom:
      if (k >= steps_.size())
        throw std::out_of_range("custom schedule has no step " + std::to_string(k));
      return steps_[k];
  }
  return 0.0;
}

void StepSchedule::validate(std::size_t horizon) const {
  if (kind_ == ScheduleKind::custom && horizon > steps_.size())
    throw std::invalid_argument("custom schedule covers " + std::to_string(steps_.size()) +
                                " steps, run needs " + std::to_string(horizon));
  double prev = alpha(0);
  if (!(prev > 0.0)) throw std::invalid_argument("schedule: alpha_0 not positive");
  for (std::size_t k = 1; k < horizon; ++k) {
    const double a = alpha(k);
    if (!(a > 0.0) || a > prev)
      throw std::invalid_argument("schedule: alpha_" + std::to_string(k) +
                                  " breaks positivity or monotonicity");
    prev = a;
  }
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  if (name == "harmonic") return ScheduleKind::harmonic;
  if (name == "sqrt") return ScheduleKind::sqrt_decay;
  if (name == "custom") return ScheduleKind::custom;
  throw std::invalid_argument("unknown schedule '" + std::string(name) + "'");
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::harmonic:
      return "harmonic";
    case ScheduleKind::sqrt_decay:
      return "sqrt";
    case ScheduleKind::custom:
      return "custom";
  }
  return "unknown";
}

}  // namespace mdkit
