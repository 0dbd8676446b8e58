#include "mdkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mdkit/point.hpp"
#include "mdkit/rng.hpp"

namespace mdkit {

PowerResult power_iteration_psd(std::size_t n,
                           const std::function<void(std::span<const double>, std::span<double>)>& apply,
                           const PowerOptions& opts) {
  PowerResult out;
  out.converged = true;
  if (n == 0) return out;
  std::vector<double> v(n);
  std::vector<double> w(n);
  Rng rng(0x5eed5eedULL);
  for (double& e : v) e = rng.uniform() - 0.5;
  double nv = norm2(v);
  for (double& e : v) e /= nv;

  out.converged = false;
  for (std::size_t it = 0; it < opts.max_iters; ++it) {
    apply(v, w);
    out.iterations = it + 1;
    const double lambda = dot(v, w);
    const double nw = norm2(w);
    if (nw == 0.0) {
      out = {0.0, 0.0, it + 1, true};
      return out;
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = w[i] - lambda * v[i];
      residual += r * r;
    }
    out.value = std::max(out.value, lambda);
    out.residual = std::sqrt(residual);
    if (out.residual <= opts.tolerance * lambda) {
      out.converged = true;
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  return out;
}

double spectral_norm(std::size_t rows, std::size_t cols, std::span<const double> data,
                     const PowerOptions& opts) {
  if (rows == 0 || cols == 0) return 0.0;
  std::vector<double> tmp;
  PowerResult lambda;
  if (cols <= rows) {
    // MᵀM, cols × cols
    tmp.assign(rows, 0.0);
    lambda = power_iteration_psd(
        cols,
        [&](std::span<const double> x, std::span<double> y) {
          for (std::size_t i = 0; i < rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols; ++j) s += data[i * cols + j] * x[j];
            tmp[i] = s;
          }
          for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
          for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) y[j] += data[i * cols + j] * tmp[i];
        },
        opts);
  } else {
    // MMᵀ, rows × rows
    tmp.assign(cols, 0.0);
    lambda = power_iteration_psd(
        rows,
        [&](std::span<const double> x, std::span<double> y) {
          for (std::size_t j = 0; j < cols; ++j) tmp[j] = 0.0;
          for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) tmp[j] += data[i * cols + j] * x[i];
          for (std::size_t i = 0; i < rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < cols; ++j) s += data[i * cols + j] * tmp[j];
            y[i] = s;
          }
        },
        opts);
  }
  return std::sqrt(std::max(lambda.value, 0.0));
}

}  // namespace mdkit
