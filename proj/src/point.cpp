#include "mdkit/point.hpp"

#include <cassert>
#include <cmath>

namespace mdkit {

bool all_finite(std::span<const double> v) {
  for (double e : v)
    if (!std::isfinite(e)) return false;
  return true;
}

bool on_simplex(std::span<const double> v, double tol) {
  if (v.empty()) return false;
  double sum = 0.0;
  for (double e : v) {
    if (!std::isfinite(e) || e < 0.0) return false;
    sum += e;
  }
  return std::abs(sum - 1.0) <= tol;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace mdkit
