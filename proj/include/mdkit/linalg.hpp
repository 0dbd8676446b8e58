#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace mdkit {

/// Power iteration did not meet its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct PowerOptions {
  double tolerance = 1e-10;
  std::size_t max_iters = 100000;
};

struct PowerResult {
  double value = 0.0;     // Rayleigh quotient, a lower bound on λ_max
  double residual = 0.0;  // ‖Mv − λv‖ at the last iterate
  std::size_t iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a symmetric positive semidefinite operator of
/// size n, given as y = M x. Stops when the residual ‖Mv − λv‖ falls below
/// tolerance·λ or the iterate maps to zero. Deterministic start vector.
PowerResult power_iteration_psd(std::size_t n,
                           const std::function<void(std::span<const double>, std::span<double>)>& apply,
                           const PowerOptions& opts = {});

/// Spectral norm ‖M‖₂ of a dense row-major rows×cols matrix, via power
/// iteration on the smaller Gram matrix. Returns the best estimate even if
/// the iteration cap is hit.
double spectral_norm(std::size_t rows, std::size_t cols, std::span<const double> data,
                     const PowerOptions& opts = {});

}  // namespace mdkit
