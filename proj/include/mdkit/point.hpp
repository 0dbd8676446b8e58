#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mdkit {

/// Dense coordinate vector. Iterates of every solver live on the unit
/// simplex; `on_simplex` checks that membership.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<double> coords) : coords_(coords) {}

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t j) const { return coords_[j]; }
  double& operator[](std::size_t j) { return coords_[j]; }

  std::span<const double> coords() const { return coords_; }
  std::span<double> coords() { return coords_; }
  const std::vector<double>& vec() const { return coords_; }

  operator std::span<const double>() const { return coords_; }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

bool all_finite(std::span<const double> v);

/// Nonnegative entries summing to one within `tol`.
bool on_simplex(std::span<const double> v, double tol = 1e-12);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double distance(std::span<const double> a, std::span<const double> b);

}  // namespace mdkit
