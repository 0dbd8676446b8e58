#include <doctest.h>

#include <cmath>
#include <vector>

#include "mdkit/solver_central.hpp"

using namespace mdkit;

namespace {

const MirrorMap kMaps[] = {MirrorMap::euclidean(), MirrorMap::negative_entropy()};

}  // namespace

TEST_CASE("schedules") {
  auto h = StepSchedule::harmonic(0.2);
  CHECK(h.alpha(0) == 0.2);
  CHECK(h.alpha(4) == 0.2 / 5);
  CHECK(h.square_summable());
  CHECK_FALSE(StepSchedule::sqrt_decay(1.0).square_summable());
  CHECK(StepSchedule::sqrt_decay(1.0).alpha(3) == 0.5);

  auto c = StepSchedule::custom({0.5, 0.5, 0.25});
  CHECK(c.alpha(2) == 0.25);
  CHECK_NOTHROW(c.validate(3));
  CHECK_THROWS(c.validate(4));
  CHECK_THROWS(StepSchedule::custom({0.1, 0.2}));
  CHECK_THROWS(StepSchedule::custom({0.1, 0.0}));
  CHECK_THROWS(StepSchedule::harmonic(0.0));

  CHECK(parse_schedule_kind("sqrt") == ScheduleKind::sqrt_decay);
  CHECK(to_string(ScheduleKind::harmonic) == "harmonic");
}

TEST_CASE("decimation stride") {
  CHECK(decimation_stride(10000, 0) == 1);
  CHECK(decimation_stride(10001, 0) == 2);
  CHECK(decimation_stride(100000, 0) == 10);
  CHECK(decimation_stride(100000, 7) == 7);
}

TEST_CASE("exact fit started at the optimum stays put") {
  ProblemInstance p(2, 2, {1.0, 0.0, 0.0, 1.0}, {0.25, 0.75});
  ReferenceOptimum ref{Point{0.25, 0.75}, 0.0, 0.0};
  for (const auto& m : kMaps) {
    auto t = run_md(p, m, StepSchedule::harmonic(0.2), Point{0.25, 0.75}, 100, ref, true);
    CHECK(t.final_point == Point{0.25, 0.75});
    CHECK(t.monitor_violations == 0);
    for (const auto& r : t.records) CHECK(r.step_norm == 0.0);
  }
}

TEST_CASE("one euclidean iteration unrolls to a projected step") {
  auto p = generate_instance(7, 4, 3);
  Point x0 = random_simplex_point(4, 8);
  auto g = subgradient(p, x0);
  std::vector<double> v(4);
  for (std::size_t j = 0; j < 4; ++j) v[j] = x0[j] - 0.2 * g[j];
  auto t = run_md(p, MirrorMap::euclidean(), StepSchedule::harmonic(0.2), x0, 1, std::nullopt,
                  false);
  CHECK(t.final_point == project_simplex(v));
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].k == 0);
  CHECK(t.records[0].alpha == 0.2);
  CHECK(t.records[0].f_value == objective(p, x0));
  CHECK(std::isnan(t.records[0].f_gap));
  CHECK(std::isnan(t.records[0].monitor_slack));
}

TEST_CASE("step inequality fixed-point case") {
  Point x{0.2, 0.3, 0.5};
  std::vector<double> g{0.0, 0.0, 0.0};
  for (const auto& m : kMaps) {
    const double s = check_step_inequality(m, g, 3.0, x, x, x, 0.1);
    CHECK(s == doctest::Approx(0.1 * 0.1 * 9.0 / 2.0).epsilon(1e-15));
  }
}

TEST_CASE("step inequality holds along 1000-step runs") {
  for (const auto& m : kMaps) {
    CAPTURE(m.name());
    for (std::uint64_t s = 1; s <= 5; ++s) {
      auto p = generate_instance(15, 3, s);
      auto ref = reference_optimum(p);
      auto t = run_md(p, m, StepSchedule::harmonic(0.2), random_simplex_point(3, 50 + s), 1000,
                      ref, true);
      CHECK(t.monitor_violations == 0);
      CHECK(t.min_monitor_slack >= -kStepInequalityTolerance);
      CHECK(t.telescoped_excess <= 1e-9);
      for (const auto& r : t.records) REQUIRE(r.f_gap >= -ref.tolerance);
    }
  }
}

TEST_CASE("monitor against an arbitrary fixed point") {
  auto p = generate_instance(10, 5, 4);
  RunOptions o;
  o.monitor_point = random_simplex_point(5, 99);
  for (const auto& m : kMaps) {
    auto t = run_md(p, m, StepSchedule::sqrt_decay(0.1), random_simplex_point(5, 98), 2000,
                    std::nullopt, true, o);
    CHECK(t.monitor_violations == 0);
  }
  CHECK_THROWS(run_md(p, MirrorMap::euclidean(), StepSchedule::harmonic(0.2),
                      random_simplex_point(5, 98), 10, std::nullopt, true));
}

TEST_CASE("runs are deterministic and iterates stay feasible") {
  auto p = generate_instance(20, 3, 2);
  auto ref = reference_optimum(p);
  for (const auto& m : kMaps) {
    auto a = run_md(p, m, StepSchedule::harmonic(0.2), random_simplex_point(3, 7), 5000, ref, true);
    auto b = run_md(p, m, StepSchedule::harmonic(0.2), random_simplex_point(3, 7), 5000, ref, true);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].f_value == b.records[i].f_value);
      CHECK(a.records[i].step_norm == b.records[i].step_norm);
    }
    CHECK(a.final_point == b.final_point);
    CHECK(on_simplex(a.final_point.coords()));
    CHECK(a.best_f <= a.final_f);
    CHECK(a.best_f == objective(p, a.best_point));
  }
}

TEST_CASE("records are decimated but keep the last iteration") {
  auto p = generate_instance(5, 3, 1);
  RunOptions o;
  o.decimation = 7;
  auto t = run_md(p, MirrorMap::negative_entropy(), StepSchedule::harmonic(0.2),
                  random_simplex_point(3, 1), 50, std::nullopt, false, o);
  CHECK(t.records.front().k == 0);
  CHECK(t.records[1].k == 7);
  CHECK(t.records.back().k == 49);
  for (std::size_t i = 1; i < t.records.size(); ++i) CHECK(t.records[i].k > t.records[i - 1].k);
}

TEST_CASE("entropic start on the boundary is clamped") {
  auto p = generate_instance(5, 3, 1);
  auto t = run_md(p, MirrorMap::negative_entropy(), StepSchedule::harmonic(0.2),
                  Point{1.0, 0.0, 0.0}, 100, std::nullopt, false);
  CHECK(all_finite(t.final_point.coords()));
  CHECK(on_simplex(t.final_point.coords()));
}
