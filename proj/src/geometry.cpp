#include "mdkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace mdkit {

namespace {

void require_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
}

void require_interior(std::span<const double> x) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] > 0.0) || !std::isfinite(x[j]))
      throw DomainError("negative entropy: coordinate " + std::to_string(j) +
                        " is not strictly positive");
  }
}

double xlogx(double v) { return v == 0.0 ? 0.0 : v * std::log(v); }

}  // namespace

std::string_view MirrorMap::name() const { return to_string(kind); }

std::string_view to_string(MirrorKind kind) {
  switch (kind) {
    case MirrorKind::euclidean:
      return "euclidean";
    case MirrorKind::negative_entropy:
      return "entropy";
  }
  return "unknown";
}

MirrorKind parse_mirror_kind(std::string_view name) {
  if (name == "euclidean") return MirrorKind::euclidean;
  if (name == "entropy" || name == "negative_entropy") return MirrorKind::negative_entropy;
  throw std::invalid_argument("unknown geometry '" + std::string(name) + "'");
}

double psi_value(const MirrorMap& map, std::span<const double> x) {
  if (map.kind == MirrorKind::euclidean) return 0.5 * dot(x, x);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < 0.0)
      throw DomainError("negative entropy: coordinate " + std::to_string(j) +
                        " is negative");
    s += xlogx(x[j]);
  }
  return s;
}

std::vector<double> psi_grad(const MirrorMap& map, std::span<const double> x) {
  std::vector<double> grad(x.begin(), x.end());
  if (map.kind == MirrorKind::euclidean) return grad;
  require_interior(x);
  for (double& e : grad) e = 1.0 + std::log(e);
  return grad;
}

Divergence bregman(const MirrorMap& map, std::span<const double> y,
                   std::span<const double> x) {
  require_same_size(y, x);
  if (map.kind == MirrorKind::euclidean) {
    const double d = distance(y, x);
    return {0.5 * d * d};
  }
  require_interior(x);
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (y[j] < 0.0)
      throw DomainError("negative entropy: first argument coordinate " +
                        std::to_string(j) + " is negative");
    s += (y[j] == 0.0 ? 0.0 : y[j] * std::log(y[j] / x[j])) - y[j] + x[j];
  }
  return {std::max(s, 0.0)};
}

void project_simplex(std::span<const double> v, std::span<double> out) {
  require_same_size(v, out);
  const std::size_t d = v.size();
  if (d == 0) throw std::invalid_argument("project_simplex: empty vector");

  thread_local std::vector<double> sorted;
  sorted.assign(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest rho with u_rho − (Σ_{i≤rho} u_i − 1)/rho > 0; rho = 1 always qualifies.
  double prefix = 0.0;
  double tau = sorted[0] - 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    prefix += sorted[j];
    const double t = (prefix - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - t > 0.0) tau = t;
  }

  double sum = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    out[j] = std::max(v[j] - tau, 0.0);
    sum += out[j];
  }
  for (double& e : out) e /= sum;
}

Point project_simplex(std::span<const double> v) {
  std::vector<double> out(v.size());
  project_simplex(v, out);
  return Point(std::move(out));
}

void mirror_step(const MirrorMap& map, std::span<const double> x,
                 std::span<const double> g, double alpha, std::span<double> out) {
  require_same_size(x, g);
  require_same_size(x, out);
  if (!(alpha > 0.0)) throw std::invalid_argument("mirror_step: alpha must be positive");

  if (map.kind == MirrorKind::euclidean) {
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] - alpha * g[j];
    project_simplex(out, out);
    return;
  }

  require_interior(x);
  const double g_min = *std::min_element(g.begin(), g.end());
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = x[j] * std::exp(-alpha * (g[j] - g_min));
    sum += out[j];
  }
  for (double& e : out) e /= sum;
}

Point mirror_step(const MirrorMap& map, std::span<const double> x,
                  std::span<const double> g, double alpha) {
  std::vector<double> out(x.size());
  mirror_step(map, x, g, alpha, out);
  return Point(std::move(out));
}

Point clamp_interior(std::span<const double> x, double floor) {
  if (std::all_of(x.begin(), x.end(), [floor](double c) { return c >= floor; }))
    return Point(std::vector<double>(x.begin(), x.end()));
  std::vector<double> out(x.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = std::max(x[j], floor);
    sum += out[j];
  }
  for (double& e : out) e /= sum;
  return Point(std::move(out));
}

}  // namespace mdkit
