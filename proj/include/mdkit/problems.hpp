#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "mdkit/point.hpp"

namespace mdkit {

/// Robust ℓ1 regression over the unit simplex:
///
///   f(x) = ‖Gx − h‖₁ = Σᵢ |⟨gⁱ, x⟩ − hᵢ|,   x ≥ 0, 1ᵀx = 1.
///
/// Row i is the private term fⁱ of agent i in the distributed setting.
/// The stored Lipschitz bound is L = Σᵢ ‖gⁱ‖₂, which dominates the norm
/// of every subgradient Σᵢ σᵢ gⁱ with σᵢ ∈ {−1, 0, 1}.
class ProblemInstance {
 public:
  ProblemInstance(std::size_t rows, std::size_t dim, std::vector<double> G,
                  std::vector<double> h);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }

  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(G_).subspan(i * dim_, dim_);
  }
  double target(std::size_t i) const { return h_[i]; }
  std::span<const double> targets() const { return h_; }
  std::span<const double> data() const { return G_; }

  double lipschitz() const { return L_; }
  /// ‖gⁱ‖₂, the Lipschitz constant of the single-row term fⁱ.
  double row_lipschitz(std::size_t i) const { return row_norms_[i]; }

  bool operator==(const ProblemInstance& o) const {
    return rows_ == o.rows_ && dim_ == o.dim_ && G_ == o.G_ && h_ == o.h_;
  }

 private:
  std::size_t rows_;
  std::size_t dim_;
  std::vector<double> G_;
  std::vector<double> h_;
  std::vector<double> row_norms_;
  double L_ = 0.0;
};

/// G and h with i.i.d. uniform [0, 1) entries drawn row by row from
/// Rng(seed); h is drawn after G.
ProblemInstance generate_instance(std::size_t rows, std::size_t dim, std::uint64_t seed);

double objective(const ProblemInstance& p, std::span<const double> x);

/// Σᵢ sgn(rᵢ) gⁱ with rᵢ = ⟨gⁱ, x⟩ − hᵢ and sgn(0) = 0.
std::vector<double> subgradient(const ProblemInstance& p, std::span<const double> x);

/// sgn(rᵢ) gⁱ for the single row `agent`. Throws std::out_of_range.
std::vector<double> row_subgradient(const ProblemInstance& p, std::size_t agent,
                                    std::span<const double> x);

/// Subgradient of Σ_{i ∈ [first, last)} fⁱ written into `out`.
void block_subgradient(const ProblemInstance& p, std::size_t first, std::size_t last,
                       std::span<const double> x, std::span<double> out);

/// Σ_{i ∈ [first, last)} fⁱ(x).
double block_objective(const ProblemInstance& p, std::size_t first, std::size_t last,
                       std::span<const double> x);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ReferenceOptimum {
  Point x_star;
  double f_star = 0.0;
  /// Certified bound on f_star − f*: L times the final cell diameter.
  double tolerance = 0.0;
};

/// Exhaustive grid search over the simplex with spacing `grid_step`,
/// followed by a shrinking local pattern search until the cell size falls
/// below 1e-7. Exponential in the dimension, hence restricted to dim ≤ 4.
ReferenceOptimum reference_optimum(const ProblemInstance& p, double grid_step = 1e-2);

/// Uniform point on the simplex (Dirichlet(1, …, 1)) from Rng(seed).
Point random_simplex_point(std::size_t dim, std::uint64_t seed);

/// Text format: "N d", N lines of d G-entries, one line of N h-entries.
void write_instance(std::ostream& os, const ProblemInstance& p);
ProblemInstance read_instance(std::istream& is);

}  // namespace mdkit
