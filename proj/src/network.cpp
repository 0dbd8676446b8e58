#include "mdkit/network.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "mdkit/format.hpp"
#include "mdkit/linalg.hpp"
#include "mdkit/rng.hpp"

namespace mdkit {

using boost::multiprecision::cpp_int;

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adj_(n) {
  for (auto& [i, j] : edges) {
    if (i >= n || j >= n) throw std::invalid_argument("graph: endpoint out of range");
    if (i == j) throw std::invalid_argument("graph: self-loop on node " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");
  edges_ = std::move(edges);
  for (const auto& [i, j] : edges_) {
    adj_[i].push_back(j);
    adj_[j].push_back(i);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) return false;
  return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
}

bool Graph::is_connected() const {
  if (n_ == 0) return false;
  std::vector<char> seen(n_, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj_[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n_;
}

Graph generate_graph(std::size_t n, std::size_t target_edges, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_graph: need at least 2 nodes");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (target_edges < n - 1 || target_edges > max_edges)
    throw std::invalid_argument("generate_graph: " + std::to_string(target_edges) +
                                " edges infeasible for a connected graph on " +
                                std::to_string(n) + " nodes");
  Rng rng(seed);

  // Uniform labelled tree from a random Prüfer sequence.
  std::vector<Edge> edges;
  edges.reserve(target_edges);
  if (n == 2) {
    edges.emplace_back(0, 1);
  } else {
    std::vector<std::size_t> code(n - 2);
    for (auto& c : code) c = static_cast<std::size_t>(rng.below(n));
    std::vector<std::size_t> degree(n, 1);
    for (auto c : code) ++degree[c];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
    for (std::size_t v = 0; v < n; ++v)
      if (degree[v] == 1) leaves.push(v);
    for (auto c : code) {
      const std::size_t leaf = leaves.top();
      leaves.pop();
      edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
      if (--degree[c] == 1) leaves.push(c);
    }
    const std::size_t u = leaves.top();
    leaves.pop();
    const std::size_t v = leaves.top();
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }

  // Fill with a uniformly random subset of the remaining pairs.
  std::vector<char> in_tree(n * n, 0);
  for (const auto& [i, j] : edges) in_tree[i * n + j] = 1;
  std::vector<Edge> pool;
  pool.reserve(max_edges - edges.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!in_tree[i * n + j]) pool.emplace_back(i, j);
  const std::size_t extra = target_edges - edges.size();
  for (std::size_t t = 0; t < extra; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng.below(pool.size() - t));
    std::swap(pool[t], pool[pick]);
    edges.push_back(pool[t]);
  }
  return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

MixingMatrix MixingMatrix::from_dense(std::size_t n, std::vector<double> weights) {
  if (n == 0 || weights.size() != n * n)
    throw std::invalid_argument("mixing matrix: expected " + std::to_string(n) + "x" +
                                std::to_string(n) + " entries");
  for (double w : weights)
    if (!std::isfinite(w)) throw std::invalid_argument("mixing matrix: non-finite entry");
  MixingMatrix A;
  A.n_ = n;
  A.w_ = std::move(weights);
  A.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = A.w_[i * n + j];
      if (w != 0.0) {
        A.cols_.push_back(j);
        A.vals_.push_back(w);
      }
    }
    A.offsets_[i + 1] = A.vals_.size();
  }
  A.sigma2_ = second_singular_value(n, A.w_);
  return A;
}

namespace {

// Correctly rounded (to nearest, ties to even) double of num/den, num ≥ 0.
double rational_to_double(const cpp_int& num, const cpp_int& den) {
  if (num == 0) return 0.0;
  const long num_bits = static_cast<long>(msb(num));
  const long den_bits = static_cast<long>(msb(den));
  const long shift = 56 - (num_bits - den_bits);
  cpp_int scaled_num = num;
  cpp_int scaled_den = den;
  if (shift >= 0) {
    scaled_num <<= shift;
  } else {
    scaled_den <<= -shift;
  }
  cpp_int q = scaled_num / scaled_den;
  const bool sticky = (scaled_num % scaled_den) != 0;
  const long extra = static_cast<long>(msb(q)) + 1 - 53;
  cpp_int mantissa = q >> extra;
  const cpp_int rest = q - (mantissa << extra);
  const cpp_int half = cpp_int(1) << (extra - 1);
  if (rest > half || (rest == half && (sticky || (mantissa & 1) != 0))) ++mantissa;
  return std::ldexp(mantissa.convert_to<double>(), static_cast<int>(extra - shift));
}

}  // namespace

MixingMatrix metropolis_weights(const Graph& g) {
  const std::size_t n = g.nodes();
  if (!g.is_connected())
    throw DisconnectedGraphError("metropolis_weights: graph is not connected");
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // diag = 1 − Σ 1/(1+m_j) = num/den exactly.
    cpp_int den = 1;
    for (std::size_t j : g.neighbors(i)) {
      const std::size_t m = 1 + std::max(g.degree(i), g.degree(j));
      w[i * n + j] = 1.0 / static_cast<double>(m);
      den = boost::multiprecision::lcm(den, cpp_int(m));
    }
    cpp_int num = den;
    for (std::size_t j : g.neighbors(i))
      num -= den / (1 + std::max(g.degree(i), g.degree(j)));
    w[i * n + i] = rational_to_double(num, den);
  }
  return MixingMatrix::from_dense(n, std::move(w));
}

double second_singular_value(std::size_t n, std::span<const double> a) {
  // B = A − (1/n)11ᵀ; iterate BᵀB.
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> tmp(n);
  auto apply = [&](std::span<const double> x, std::span<double> y) {
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean += x[j];
    mean *= inv_n;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
      tmp[i] = s - mean;
    }
    mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += tmp[i];
    mean *= inv_n;
    for (std::size_t j = 0; j < n; ++j) y[j] = -mean;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[j] += a[i * n + j] * tmp[i];
  };
  const PowerResult r = power_iteration_psd(n, apply, {1e-10, 100000});
  if (!r.converged)
    throw ConvergenceError("second_singular_value: power iteration stalled at residual " +
                               fmt_real(r.residual),
                           r.residual);
  return std::sqrt(std::max(r.value, 0.0));
}

double second_singular_value(const MixingMatrix& A) {
  return second_singular_value(A.size(), A.weights());
}

AssumptionReport verify_assumptions(const MixingMatrix& A) {
  constexpr double kTol = 1e-12;
  const std::size_t n = A.size();
  AssumptionReport r;
  r.sigma2 = A.sigma2();
  r.nonnegative = true;
  r.symmetric = true;
  std::vector<double> col(n, 0.0);
  bool positive_diagonal = false;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = A(i, j);
      if (w < 0.0) r.nonnegative = false;
      if (w != A(j, i)) r.symmetric = false;
      row += w;
      col[j] += w;
    }
    if (A(i, i) > 0.0) positive_diagonal = true;
    r.max_row_error = std::max(r.max_row_error, std::abs(row - 1.0));
  }
  for (double c : col) r.max_col_error = std::max(r.max_col_error, std::abs(c - 1.0));
  r.doubly_stochastic = r.nonnegative && r.max_row_error <= kTol && r.max_col_error <= kTol;

  std::vector<Edge> pattern;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (A(i, j) > 0.0 || A(j, i) > 0.0) pattern.emplace_back(i, j);
  r.irreducible = n == 1 || Graph(n, std::move(pattern)).is_connected();
  r.contraction = r.sigma2 < 1.0 - kTol;
  r.aperiodic = positive_diagonal || (r.irreducible && r.doubly_stochastic && r.contraction);
  return r;
}

std::string AssumptionReport::summary() const {
  std::ostringstream os;
  auto flag = [](bool b) { return b ? "yes" : "no"; };
  os << "nonnegative=" << flag(nonnegative) << " doubly_stochastic=" << flag(doubly_stochastic)
     << " symmetric=" << flag(symmetric) << " irreducible=" << flag(irreducible)
     << " aperiodic=" << flag(aperiodic) << " sigma2<1=" << flag(contraction)
     << " sigma2=" << fmt_real(sigma2) << " row_err=" << fmt_real(max_row_error)
     << " col_err=" << fmt_real(max_col_error);
  return os.str();
}

void write_graph(std::ostream& os, const Graph& g) {
  os << g.nodes() << ' ' << g.edge_count() << '\n';
  for (const auto& [i, j] : g.edges()) os << i << ' ' << j << '\n';
}

Graph read_graph(std::istream& is) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(is >> n >> m)) throw std::runtime_error("graph: missing 'n m' header");
  std::vector<Edge> edges(m);
  for (std::size_t t = 0; t < m; ++t)
    if (!(is >> edges[t].first >> edges[t].second))
      throw std::runtime_error("graph: bad edge line " + std::to_string(t + 2));
  return Graph(n, std::move(edges));
}

void write_matrix(std::ostream& os, const MixingMatrix& A) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < A.size(); ++j) os << (j ? " " : "") << fmt_real(A(i, j));
    os << '\n';
  }
}

MixingMatrix read_matrix(std::istream& is) {
  std::vector<double> w;
  std::size_t n = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::size_t count = 0;
    double v = 0.0;
    std::string token;
    while (ls >> token) {
      if (!parse_real(token, v))
        throw std::runtime_error("matrix: bad number '" + token + "' on line " +
                                 std::to_string(line_no));
      w.push_back(v);
      ++count;
    }
    if (count == 0) continue;
    if (n == 0) n = count;
    if (count != n)
      throw std::runtime_error("matrix: line " + std::to_string(line_no) + " has " +
                               std::to_string(count) + " entries, expected " +
                               std::to_string(n));
  }
  if (n == 0 || w.size() != n * n) throw std::runtime_error("matrix: not square");
  return MixingMatrix::from_dense(n, std::move(w));
}

}  // namespace mdkit
