// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Each criterion also has a wall-clock budget that counts toward its verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mdkit/experiment.hpp"
#include "mdkit/format.hpp"
#include "mdkit/rng.hpp"
#include "mdkit/solver_central.hpp"
#include "mdkit/solver_dist.hpp"

using namespace mdkit;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "!") << what << "; ";
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s,
               const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.require(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(dt < budget_s, "runtime " + fmt_real(dt) + " s < " + fmt_real(budget_s) + " s");
  if (!v.pass) ++failures;
  std::cout << "AC" << id << ' ' << (v.pass ? "PASS" : "FAIL") << ' ' << name << " | "
            << v.detail.str() << std::endl;
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

const MirrorMap kMaps[] = {MirrorMap::euclidean(), MirrorMap::negative_entropy()};

// Seed-fixed d=3, N=20 instances shared by the centralized criteria.
constexpr std::uint64_t kCentralSeeds[] = {1, 2, 3};

void geometry_axioms(Verdict& v) {
  for (const auto& m : kMaps) {
    Rng rng(m.kind == MirrorKind::euclidean ? 1001 : 1002);
    double min_div = 0.0, worst_lower = 0.0, worst_three = 0.0, worst_convex = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const std::size_t d = 2 + rng.below(9);
      auto draw = [&] { return clamp_interior(random_simplex_point(d, rng.next())); };
      const Point x = draw(), y = draw(), z = draw();
      const double dzx = bregman(m, z, x).value;
      min_div = std::min(min_div, dzx);
      worst_lower = std::min(worst_lower, dzx - 0.5 * m.mu * sq_dist(z.coords(), x.coords()));

      const auto gz = psi_grad(m, z), gx = psi_grad(m, x);
      double rhs = 0.0;
      for (std::size_t j = 0; j < d; ++j) rhs += (gz[j] - gx[j]) * (y[j] - z[j]);
      const double lhs = bregman(m, y, x).value - bregman(m, y, z).value - dzx;
      worst_three = std::max(worst_three, std::abs(lhs - rhs));

      if (m.kind == MirrorKind::negative_entropy) {
        // z is the fixed first argument, x and y the two second arguments
        const double dx = dzx, dy = bregman(m, z, y).value;
        for (int l = 0; l <= 10; ++l) {
          const double lam = l / 10.0;
          std::vector<double> mid(d);
          for (std::size_t j = 0; j < d; ++j) mid[j] = lam * x[j] + (1.0 - lam) * y[j];
          worst_convex =
              std::max(worst_convex, bregman(m, z, mid).value - (lam * dx + (1.0 - lam) * dy));
        }
      }
    }
    const std::string tag(m.name());
    v.require(min_div >= -1e-10, tag + " min D " + fmt_real(min_div));
    v.require(worst_lower >= -1e-10, tag + " strong convexity slack " + fmt_real(worst_lower));
    v.require(worst_three <= 1e-10, tag + " three-point error " + fmt_real(worst_three));
    if (m.kind == MirrorKind::negative_entropy)
      v.require(worst_convex <= 1e-10, tag + " second-argument convexity excess " +
                                           fmt_real(worst_convex));
  }
}

void projection_oracle(Verdict& v) {
  Rng rng(2002);
  constexpr int kGrid = 1000;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    double u[3];
    for (double& c : u) c = 4.0 * rng.uniform() - 2.0;
    const Point p = project_simplex(std::span<const double>(u, 3));
    double best = INFINITY, arg[3] = {};
    for (int i = 0; i <= kGrid; ++i)
      for (int j = 0; i + j <= kGrid; ++j) {
        const double z[3] = {double(i) / kGrid, double(j) / kGrid, double(kGrid - i - j) / kGrid};
        const double dd = sq_dist(z, u);
        if (dd < best) {
          best = dd;
          std::copy(z, z + 3, arg);
        }
      }
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(p[j] - arg[j]));
  }
  v.require(worst <= 2e-3, "max l-inf gap to grid " + fmt_real(worst));
}

Point central_start(std::uint64_t seed) { return random_simplex_point(3, seed); }

void step_inequality(Verdict& v) {
  for (const auto s : kCentralSeeds) {
    const auto p = generate_instance(20, 3, s);
    const auto ref = reference_optimum(p);
    for (const auto& m : kMaps) {
      const auto t = run_md(p, m, StepSchedule::harmonic(0.2), central_start(s), 100000, ref, true);
      v.require(t.monitor_violations == 0,
                "seed " + std::to_string(s) + ' ' + std::string(m.name()) + " violations " +
                    std::to_string(t.monitor_violations) + " min slack " +
                    fmt_real(t.min_monitor_slack));
    }
  }
}

void central_convergence(Verdict& v) {
  for (const auto s : kCentralSeeds) {
    const auto p = generate_instance(20, 3, s);
    const auto ref = reference_optimum(p);
    for (const auto& m : kMaps) {
      const auto t =
          run_md(p, m, StepSchedule::harmonic(0.2), central_start(s), 100000, ref, false);
      const std::string tag = "seed " + std::to_string(s) + ' ' + std::string(m.name());
      v.require(t.final_f_gap <= 1e-3, tag + " f_gap " + fmt_real(t.final_f_gap));
      v.require(t.tail_max_step <= 1e-4, tag + " tail step " + fmt_real(t.tail_max_step));
    }
  }
}

void mixing_checks(Verdict& v) {
  const auto P = metropolis_weights(path_graph(3));
  const double want[3][3] = {{2.0 / 3, 1.0 / 3, 0.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3},
                             {0.0, 1.0 / 3, 2.0 / 3}};
  bool exact = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) exact = exact && P(i, j) == want[i][j];
  v.require(exact, "3-path matrix exact");
  v.require(std::abs(P.sigma2() - 2.0 / 3) <= 1e-10, "3-path sigma2 " + fmt_real(P.sigma2()));

  const auto K = metropolis_weights(complete_graph(5));
  v.require(K.sigma2() <= 1e-12, "K5 sigma2 " + fmt_real(K.sigma2()));

  for (const std::size_t m : {939u, 2678u}) {
    const auto g = generate_graph(100, m, 1);
    const auto A = metropolis_weights(g);
    const auto r = verify_assumptions(A);
    v.require(g.edge_count() == m && g.is_connected() && r.all_pass() && r.sigma2 < 1.0,
              std::to_string(m) + "-edge graph: " + r.summary());
  }
}

void distributed_convergence(Verdict& v) {
  const auto p = generate_instance(5, 3, 1);
  const auto ref = reference_optimum(p);
  const auto A = metropolis_weights(path_graph(5));
  const std::vector<Point> x0(5, random_simplex_point(3, 1));
  const auto t = run_dmd(p, MirrorMap::negative_entropy(), StepSchedule::harmonic(0.2), A, x0,
                         100000, ref, true);
  v.require(t.final_consensus_error <= 1e-3, "consensus " + fmt_real(t.final_consensus_error));
  v.require(t.final_max_pairwise <= 1e-3, "max pairwise " + fmt_real(t.final_max_pairwise));
  v.require(t.final_f_gap <= 2e-3, "f_gap " + fmt_real(t.final_f_gap));
  v.require(t.contraction_violations == 0,
            "contraction violations " + std::to_string(t.contraction_violations) +
                " min slack " + fmt_real(t.min_contraction_slack));
  v.require(t.step_bound_violations == 0,
            "step-bound violations " + std::to_string(t.step_bound_violations) + " min slack " +
                fmt_real(t.min_step_bound_slack));
}

// First recorded iteration whose gap is at or below `level`, or -1.
template <class Trace>
long long first_hit(const Trace& t, double level) {
  for (const auto& r : t.records)
    if (r.f_gap <= level) return static_cast<long long>(r.k);
  return -1;
}

// "a reaches the level no later than b"; a run that never reaches it loses.
bool no_later(long long a, long long b) { return a >= 0 && (b < 0 || a <= b); }
bool strictly_earlier(long long a, long long b) { return a >= 0 && (b < 0 || a < b); }

void density_and_geometry_orderings(Verdict& v) {
  constexpr std::size_t kIters = 100000;
  const auto sched = StepSchedule::harmonic(0.2);
  int votes_a = 0, votes_density = 0, votes_central = 0;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto p = generate_instance(100, 10, s);
    const auto ref = experiment_reference(p, 1e-2, 200000);
    const Point x0 = random_simplex_point(10, s);
    const double level = 1e-2 * objective(p, x0);

    const auto ent = run_md(p, MirrorMap::negative_entropy(), sched, x0, kIters, ref, false,
                            {1, std::nullopt});
    const auto euc = run_md(p, MirrorMap::euclidean(), sched, x0, kIters, ref, false,
                            {1, std::nullopt});
    const std::vector<Point> starts(100, x0);
    DistOptions o;
    o.decimation = 10;
    const auto sparse = run_dmd(p, MirrorMap::negative_entropy(), sched,
                                metropolis_weights(generate_graph(100, 939, s)), starts, kIters,
                                ref, false, o);
    const auto dense = run_dmd(p, MirrorMap::negative_entropy(), sched,
                               metropolis_weights(generate_graph(100, 2678, s)), starts, kIters,
                               ref, false, o);
    const long long he = first_hit(ent, level), hu = first_hit(euc, level);
    const long long h939 = first_hit(sparse, level), h2678 = first_hit(dense, level);
    votes_a += strictly_earlier(he, hu);
    votes_density += no_later(h2678, h939);
    votes_central += no_later(he, h939) && no_later(he, h2678);
    v.detail << "seed " << s << " level " << fmt_real(level) << " hits entropy=" << he
             << " euclidean=" << hu << " d939=" << h939 << " d2678=" << h2678
             << " final gaps d939=" << fmt_real(sparse.final_f_gap)
             << " d2678=" << fmt_real(dense.final_f_gap) << "; ";
  }
  v.require(votes_a >= 2, "(a) entropic before Euclidean on " + std::to_string(votes_a) + "/3");
  v.require(votes_density >= 2,
            "(b)(c) 2678 edges no later than 939 on " + std::to_string(votes_density) + "/3");
  v.require(votes_central >= 2,
            "centralized no later than distributed on " + std::to_string(votes_central) + "/3");
}

void reduction(Verdict& v) {
  Rng rng(8008);
  int matched = 0, total = 0;
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng.below(7), d = 2 + rng.below(5);
    std::vector<double> g(d);
    for (double& c : g) c = rng.uniform();
    const double h = rng.uniform();
    std::vector<double> G;
    for (std::size_t i = 0; i < n; ++i) G.insert(G.end(), g.begin(), g.end());
    const ProblemInstance p(n, d, G, std::vector<double>(n, h));
    const ProblemInstance single(1, d, g, {h});
    const auto A = metropolis_weights(complete_graph(n));

    std::vector<Point> x0;
    AgentMatrix X(n, d);
    for (std::size_t i = 0; i < n; ++i) {
      x0.push_back(random_simplex_point(d, rng.next()));
      std::copy(x0.back().coords().begin(), x0.back().coords().end(), X.row(i).begin());
    }
    const Point xbar = centroid(X);
    for (const auto& m : kMaps) {
      const auto dt = run_dmd(p, m, StepSchedule::harmonic(0.2), A, x0, 1, std::nullopt, false);
      const auto ct = run_md(single, m, StepSchedule::harmonic(0.2), xbar, 1, std::nullopt, false);
      ++total;
      matched += std::all_of(dt.final_points.begin(), dt.final_points.end(),
                             [&](const Point& x) { return x == ct.final_point; });
    }
  }
  v.require(matched == total,
            "bit-identical " + std::to_string(matched) + "/" + std::to_string(total));
}

}  // namespace

int main() {
  criterion(1, "geometry axioms", 5, geometry_axioms);
  criterion(2, "projection oracle equivalence", 5, projection_oracle);
  criterion(3, "per-step inequality", 30, step_inequality);
  criterion(4, "centralized iterate convergence", 60, central_convergence);
  criterion(5, "mixing-matrix checks", 5, mixing_checks);
  criterion(6, "distributed convergence", 120, distributed_convergence);
  criterion(7, "convergence orderings at N=100, d=10", 300, density_and_geometry_orderings);
  criterion(8, "reduction check", 5, reduction);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failures ? 1 : 0;
}
