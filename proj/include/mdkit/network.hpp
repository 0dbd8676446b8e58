#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdkit {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph on nodes 0..n−1. Edges are stored once as
/// (i, j) with i < j, sorted.
class Graph {
 public:
  /// Throws std::invalid_argument on self-loops, duplicates or
  /// out-of-range endpoints.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t nodes() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_[i]; }
  std::size_t degree(std::size_t i) const { return adj_[i].size(); }
  bool has_edge(std::size_t i, std::size_t j) const;
  bool is_connected() const;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
};

/// Connected graph with exactly `target_edges` edges: a uniformly random
/// labelled spanning tree (random Prüfer sequence) plus uniformly chosen
/// extra edges. Requires n ≥ 2 and n−1 ≤ target_edges ≤ n(n−1)/2.
Graph generate_graph(std::size_t n, std::size_t target_edges, std::uint64_t seed);

Graph path_graph(std::size_t n);
Graph complete_graph(std::size_t n);

/// Dense doubly stochastic weights with a cached σ₂ and a sparse row view
/// (positive entries, columns ascending) used by the mixing kernels.
class MixingMatrix {
 public:
  /// Builds from a row-major n×n matrix and computes σ₂. No structural
  /// checks here; see verify_assumptions.
  static MixingMatrix from_dense(std::size_t n, std::vector<double> weights);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  std::span<const double> weights() const { return w_; }
  double sigma2() const { return sigma2_; }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return std::span<const std::size_t>(cols_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  std::span<const double> row_vals(std::size_t i) const {
    return std::span<const double>(vals_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  std::size_t nonzeros() const { return vals_.size(); }

 private:
  MixingMatrix() = default;

  std::size_t n_ = 0;
  std::vector<double> w_;
  double sigma2_ = 1.0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

class DisconnectedGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Metropolis–Hastings weights A_ij = 1/(1 + max(deg_i, deg_j)) on edges,
/// A_ii = 1 − Σ_{j≠i} A_ij. Every entry is the correctly rounded value of
/// its exact rational, so e.g. K_N gives fl(1/N) everywhere.
MixingMatrix metropolis_weights(const Graph& g);

/// σ₂(A) as the top singular value of A − (1/n)11ᵀ, by power iteration on
/// its Gram matrix (tolerance 1e-10, cap 10⁵). For doubly stochastic A
/// this is the second singular value of A. Throws ConvergenceError.
double second_singular_value(std::size_t n, std::span<const double> weights);
double second_singular_value(const MixingMatrix& A);

struct AssumptionReport {
  bool nonnegative = false;
  bool doubly_stochastic = false;  // row and column sums within 1e-12
  bool symmetric = false;
  bool irreducible = false;        // positive pattern connected
  bool aperiodic = false;          // a positive diagonal, or σ₂ < 1 when irreducible
  bool contraction = false;        // σ₂ < 1
  double sigma2 = 1.0;
  double max_row_error = 0.0;
  double max_col_error = 0.0;

  bool all_pass() const {
    return nonnegative && doubly_stochastic && symmetric && irreducible && aperiodic &&
           contraction;
  }
  std::string summary() const;
};

AssumptionReport verify_assumptions(const MixingMatrix& A);

void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);

/// n lines of n decimals.
void write_matrix(std::ostream& os, const MixingMatrix& A);
MixingMatrix read_matrix(std::istream& is);

}  // namespace mdkit
