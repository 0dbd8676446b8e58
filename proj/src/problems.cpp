#include "mdkit/problems.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "mdkit/format.hpp"
#include "mdkit/rng.hpp"

namespace mdkit {

namespace {

double sgn(double r) { return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0); }

double residual(const ProblemInstance& p, std::size_t i, std::span<const double> x) {
  return dot(p.row(i), x) - p.target(i);
}

}  // namespace

ProblemInstance::ProblemInstance(std::size_t rows, std::size_t dim, std::vector<double> G,
                                 std::vector<double> h)
    : rows_(rows), dim_(dim), G_(std::move(G)), h_(std::move(h)) {
  if (rows_ < 1) throw std::invalid_argument("problem needs at least one row");
  if (dim_ < 2) throw std::invalid_argument("problem dimension must be at least 2");
  if (G_.size() != rows_ * dim_ || h_.size() != rows_)
    throw std::invalid_argument("problem data has the wrong shape");
  if (!all_finite(G_) || !all_finite(h_))
    throw std::invalid_argument("problem data must be finite");
  row_norms_.resize(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    row_norms_[i] = norm2(row(i));
    L_ += row_norms_[i];
  }
}

ProblemInstance generate_instance(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> G(rows * dim);
  std::vector<double> h(rows);
  for (double& e : G) e = rng.uniform();
  for (double& e : h) e = rng.uniform();
  return ProblemInstance(rows, dim, std::move(G), std::move(h));
}

double objective(const ProblemInstance& p, std::span<const double> x) {
  return block_objective(p, 0, p.rows(), x);
}

double block_objective(const ProblemInstance& p, std::size_t first, std::size_t last,
                       std::span<const double> x) {
  double f = 0.0;
  for (std::size_t i = first; i < last; ++i) f += std::abs(residual(p, i, x));
  return f;
}

void block_subgradient(const ProblemInstance& p, std::size_t first, std::size_t last,
                       std::span<const double> x, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = first; i < last; ++i) {
    const double s = sgn(residual(p, i, x));
    if (s == 0.0) continue;
    const auto g = p.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += s * g[j];
  }
}

std::vector<double> subgradient(const ProblemInstance& p, std::span<const double> x) {
  std::vector<double> g(p.dim());
  block_subgradient(p, 0, p.rows(), x, g);
  return g;
}

std::vector<double> row_subgradient(const ProblemInstance& p, std::size_t agent,
                                    std::span<const double> x) {
  if (agent >= p.rows())
    throw std::out_of_range("agent " + std::to_string(agent) + " out of range [0, " +
                            std::to_string(p.rows()) + ")");
  std::vector<double> g(p.dim());
  block_subgradient(p, agent, agent + 1, x, g);
  return g;
}

namespace {

// Visits every point of the simplex grid with `m` cells per edge, i.e.
// x = k/m with k a composition of m into dim nonnegative parts.
template <class Visit>
void for_each_grid_point(std::size_t dim, std::size_t m, Visit&& visit) {
  std::vector<std::size_t> k(dim, 0);
  std::vector<double> x(dim);
  const double inv = 1.0 / static_cast<double>(m);
  auto rec = [&](auto&& self, std::size_t j, std::size_t remaining) -> void {
    if (j + 1 == dim) {
      k[j] = remaining;
      for (std::size_t t = 0; t < dim; ++t) x[t] = static_cast<double>(k[t]) * inv;
      visit(std::span<const double>(x));
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      k[j] = c;
      self(self, j + 1, remaining - c);
    }
  };
  rec(rec, 0, m);
}

}  // namespace

ReferenceOptimum reference_optimum(const ProblemInstance& p, double grid_step) {
  const std::size_t d = p.dim();
  if (d > 4)
    throw DimensionError("reference_optimum: grid oracle supports dim <= 4, got " +
                         std::to_string(d));
  if (!(grid_step > 0.0) || grid_step > 1e-2)
    throw std::invalid_argument("reference_optimum: grid_step must be in (0, 1e-2]");

  const auto m = static_cast<std::size_t>(std::ceil(1.0 / grid_step - 1e-9));
  std::vector<double> best;
  double best_f = std::numeric_limits<double>::infinity();
  for_each_grid_point(d, m, [&](std::span<const double> x) {
    const double f = objective(p, x);
    if (f < best_f) {
      best_f = f;
      best.assign(x.begin(), x.end());
    }
  });

  // Local pattern search in the first d−1 coordinates; the last one is
  // 1 − Σ. Recentre while the window keeps improving, shrink otherwise.
  constexpr int kHalfWidth = 8;
  constexpr double kShrink = 0.25;
  constexpr double kFinalCell = 1e-7;
  const std::size_t free = d - 1;
  double cell = 1.0 / static_cast<double>(m) / 4.0;
  std::vector<double> cand(d);
  std::vector<int> offset(free);
  int guard = 0;
  while (cell >= kFinalCell && guard++ < 10000) {
    std::vector<double> centre = best;
    bool improved = false;
    std::fill(offset.begin(), offset.end(), -kHalfWidth);
    for (;;) {
      double tail = 1.0;
      bool feasible = true;
      for (std::size_t j = 0; j < free; ++j) {
        cand[j] = centre[j] + offset[j] * cell;
        if (cand[j] < 0.0) {
          if (cand[j] > -1e-15) {
            cand[j] = 0.0;
          } else {
            feasible = false;
          }
        }
        tail -= cand[j];
      }
      if (tail < 0.0 && tail > -1e-15) tail = 0.0;
      if (feasible && tail >= 0.0) {
        cand[d - 1] = tail;
        const double f = objective(p, cand);
        if (f < best_f) {
          best_f = f;
          best = cand;
          improved = true;
        }
      }
      std::size_t j = 0;
      while (j < free && offset[j] == kHalfWidth) offset[j++] = -kHalfWidth;
      if (j == free) break;
      ++offset[j];
    }
    if (!improved) cell *= kShrink;
  }

  // Cell diameter of the final grid in the full coordinates.
  const double diameter = cell / kShrink * std::sqrt(static_cast<double>(free + 1));
  return {Point(best), best_f, p.lipschitz() * diameter};
}

Point random_simplex_point(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(dim);
  double sum = 0.0;
  for (double& e : x) {
    e = rng.exponential();
    sum += e;
  }
  for (double& e : x) e /= sum;
  return Point(std::move(x));
}

void write_instance(std::ostream& os, const ProblemInstance& p) {
  os << p.rows() << ' ' << p.dim() << '\n';
  for (std::size_t i = 0; i < p.rows(); ++i) {
    const auto g = p.row(i);
    for (std::size_t j = 0; j < p.dim(); ++j) os << (j ? " " : "") << fmt_real(g[j]);
    os << '\n';
  }
  for (std::size_t i = 0; i < p.rows(); ++i) os << (i ? " " : "") << fmt_real(p.target(i));
  os << '\n';
}

ProblemInstance read_instance(std::istream& is) {
  std::size_t rows = 0;
  std::size_t dim = 0;
  if (!(is >> rows >> dim)) throw std::runtime_error("instance: missing 'N d' header");
  std::vector<double> G(rows * dim);
  std::vector<double> h(rows);
  for (std::size_t t = 0; t < G.size(); ++t)
    if (!read_real(is, G[t]))
      throw std::runtime_error("instance: bad G entry at row " + std::to_string(t / dim) +
                               ", column " + std::to_string(t % dim));
  for (std::size_t i = 0; i < rows; ++i)
    if (!read_real(is, h[i]))
      throw std::runtime_error("instance: bad h entry " + std::to_string(i));
  return ProblemInstance(rows, dim, std::move(G), std::move(h));
}

}  // namespace mdkit
