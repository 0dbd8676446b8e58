#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "mdkit/point.hpp"
#include "mdkit/problems.hpp"
#include "mdkit/rng.hpp"

using namespace mdkit;

namespace {

ProblemInstance identity2(double h0, double h1) {
  return ProblemInstance(2, 2, {1.0, 0.0, 0.0, 1.0}, {h0, h1});
}

}  // namespace

TEST_CASE("generate_instance is deterministic and uniform on [0,1)") {
  auto a = generate_instance(100, 10, 42);
  auto b = generate_instance(100, 10, 42);
  CHECK(a == b);
  CHECK_FALSE(a == generate_instance(100, 10, 43));
  for (double v : a.data()) CHECK((v >= 0.0 && v < 1.0));
  for (double v : a.targets()) CHECK((v >= 0.0 && v < 1.0));

  double L = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) L += norm2(a.row(i));
  CHECK(a.lipschitz() == doctest::Approx(L).epsilon(1e-15));

  auto one = generate_instance(1, 2, 9);
  CHECK(one.lipschitz() == norm2(one.row(0)));
}

TEST_CASE("instance validation") {
  CHECK_THROWS(ProblemInstance(0, 2, {}, {}));
  CHECK_THROWS(ProblemInstance(1, 1, {1.0}, {0.0}));
  CHECK_THROWS(ProblemInstance(1, 2, {1.0}, {0.0}));
  CHECK_THROWS(ProblemInstance(1, 2, {1.0, NAN}, {0.0}));
}

TEST_CASE("objective examples") {
  CHECK(objective(identity2(0, 0), Point{0.3, 0.7}) == 1.0);
  CHECK(objective(identity2(0.3, 0.7), Point{0.3, 0.7}) == 0.0);
  ProblemInstance p(2, 2, {1.0, 0.0, 1.0, 0.0}, {0.0, 1.0});
  CHECK(objective(p, Point{0.5, 0.5}) == 1.0);
}

TEST_CASE("subgradient examples") {
  CHECK(subgradient(identity2(0, 0), Point{0.3, 0.7}) == std::vector<double>{1.0, 1.0});
  CHECK(subgradient(identity2(0.3, 0.7), Point{0.3, 0.7}) == std::vector<double>{0.0, 0.0});
  CHECK(subgradient(identity2(1, 0), Point{0.3, 0.7}) == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("row_subgradient examples") {
  CHECK(row_subgradient(identity2(0, 0), 0, Point{0.3, 0.7}) == std::vector<double>{1.0, 0.0});
  CHECK(row_subgradient(identity2(0.3, 0.7), 1, Point{0.3, 0.7}) ==
        std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(row_subgradient(identity2(0, 0), 2, Point{0.3, 0.7}), std::out_of_range);
}

TEST_CASE("row subgradients sum to the full subgradient exactly") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    auto p = generate_instance(1 + rng.below(30), 2 + rng.below(6), rng.next());
    Point x = random_simplex_point(p.dim(), rng.next());
    std::vector<double> sum(p.dim(), 0.0);
    for (std::size_t i = 0; i < p.rows(); ++i) {
      auto g = row_subgradient(p, i, x);
      for (std::size_t j = 0; j < p.dim(); ++j) sum[j] += g[j];
    }
    CHECK(sum == subgradient(p, x));

    std::vector<double> block(p.dim());
    block_subgradient(p, 0, p.rows(), x, block);
    CHECK(block == subgradient(p, x));
    CHECK(block_objective(p, 0, p.rows(), x) == objective(p, x));
  }
}

TEST_CASE("subgradient inequality and Lipschitz bound") {
  Rng rng(23);
  for (int t = 0; t < 2000; ++t) {
    auto p = generate_instance(1 + rng.below(50), 2 + rng.below(8), rng.next());
    Point x = random_simplex_point(p.dim(), rng.next());
    Point z = random_simplex_point(p.dim(), rng.next());
    auto g = subgradient(p, x);
    const double fx = objective(p, x), fz = objective(p, z);
    double lin = 0.0;
    for (std::size_t j = 0; j < p.dim(); ++j) lin += g[j] * (z[j] - x[j]);
    REQUIRE(fz >= fx + lin - 1e-10);
    REQUIRE(std::abs(fx - fz) <= p.lipschitz() * distance(x.coords(), z.coords()) + 1e-10);
    REQUIRE(norm2(g) <= p.lipschitz());
  }
}

TEST_CASE("reference_optimum examples") {
  auto a = reference_optimum(identity2(0, 1));
  CHECK(a.f_star <= a.tolerance);
  CHECK(a.x_star[1] == doctest::Approx(1.0).epsilon(1e-7));

  auto b = reference_optimum(identity2(0.3, 0.7));
  CHECK(b.f_star <= b.tolerance);
  CHECK(b.x_star[0] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(b.f_star == objective(identity2(0.3, 0.7), b.x_star));
}

TEST_CASE("reference_optimum dominates random probes") {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    auto p = generate_instance(20, 3, s);
    auto ref = reference_optimum(p);
    CHECK(ref.f_star == objective(p, ref.x_star));
    CHECK(on_simplex(ref.x_star.coords()));
    CHECK(ref.tolerance < 1e-5);
    for (std::uint64_t r = 0; r < 1000; ++r)
      REQUIRE(ref.f_star <= objective(p, random_simplex_point(3, 1000 * s + r)));
  }
}

TEST_CASE("reference_optimum agrees with an LP solve") {
  // Optimal values of the equivalent linear programs, solved offline with
  // a simplex-method LP solver.
  const double lp[] = {5.354120001, 6.006819593, 5.671631104};
  for (std::uint64_t s = 1; s <= 3; ++s) {
    auto ref = reference_optimum(generate_instance(20, 3, s));
    CHECK(ref.f_star >= lp[s - 1] - 1e-9);
    CHECK(ref.f_star - lp[s - 1] <= ref.tolerance);
  }
  auto q = reference_optimum(generate_instance(5, 3, 1));
  CHECK(q.f_star >= 0.759644343 - 1e-9);
  CHECK(q.f_star - 0.759644343 <= q.tolerance);
}

TEST_CASE("reference_optimum preconditions") {
  CHECK_THROWS_AS(reference_optimum(generate_instance(5, 5, 1)), DimensionError);
  CHECK_THROWS(reference_optimum(generate_instance(5, 3, 1), 0.1));
  CHECK_THROWS(reference_optimum(generate_instance(5, 3, 1), 0.0));
}

TEST_CASE("random_simplex_point") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto x = random_simplex_point(7, s);
    CHECK(on_simplex(x.coords()));
    CHECK(x == random_simplex_point(7, s));
  }
}

TEST_CASE("instance text round trip is exact") {
  auto p = generate_instance(13, 4, 77);
  std::stringstream ss;
  write_instance(ss, p);
  CHECK(read_instance(ss) == p);

  std::istringstream bad("2 2\n1 0\n0 1\n0.5\n");
  CHECK_THROWS(read_instance(bad));
}
