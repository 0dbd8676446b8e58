#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "mdkit/point.hpp"

namespace mdkit {

/// Raised when a point leaves the domain of a mirror map, e.g. a zero
/// coordinate handed to the entropy gradient.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class MirrorKind { euclidean, negative_entropy };

/// A strongly convex generating function ψ together with its modulus μ in
/// the Euclidean norm.
///
///   euclidean        ψ(x) = ½‖x‖²           μ = 1
///   negative_entropy ψ(x) = Σ xʲ log xʲ     μ = 1
///
/// Negative entropy is 1-strongly convex in ‖·‖₁ on the simplex (Pinsker)
/// and ‖·‖₂ ≤ ‖·‖₁, so μ = 1 is a valid, possibly loose, 2-norm modulus.
struct MirrorMap {
  MirrorKind kind = MirrorKind::euclidean;
  double mu = 1.0;

  static constexpr MirrorMap euclidean() { return {MirrorKind::euclidean, 1.0}; }
  static constexpr MirrorMap negative_entropy() {
    return {MirrorKind::negative_entropy, 1.0};
  }

  std::string_view name() const;
};

MirrorKind parse_mirror_kind(std::string_view name);
std::string_view to_string(MirrorKind kind);

/// Value of a Bregman divergence; nonnegative by construction up to rounding.
struct Divergence {
  double value = 0.0;
};

/// ψ(x). Negative entropy uses 0·log 0 = 0 and rejects negative entries.
double psi_value(const MirrorMap& map, std::span<const double> x);

/// ∇ψ(x). Negative entropy requires every coordinate strictly positive.
std::vector<double> psi_grad(const MirrorMap& map, std::span<const double> x);

/// D_ψ(y, x) = ψ(y) − ψ(x) − ⟨∇ψ(x), y − x⟩.
///
/// Evaluated in the algebraically reduced forms ½‖y − x‖² and
/// Σ [yʲ log(yʲ/xʲ) − yʲ + xʲ]; the latter is the relative entropy on the
/// simplex. `x` must be interior for negative entropy, `y` may touch the
/// boundary.
Divergence bregman(const MirrorMap& map, std::span<const double> y,
                   std::span<const double> x);

/// Euclidean projection onto the unit simplex (sort-and-threshold).
/// The output is renormalized so its coordinates sum to one.
Point project_simplex(std::span<const double> v);
void project_simplex(std::span<const double> v, std::span<double> out);

/// argmin over the simplex of ⟨g, z − x⟩ + D_ψ(z, x)/alpha.
///
/// Euclidean: project_simplex(x − alpha·g).
/// Negative entropy: xʲ exp(−alpha·gʲ) renormalized, with the exponent
/// shifted by its maximum before exponentiation.
Point mirror_step(const MirrorMap& map, std::span<const double> x,
                  std::span<const double> g, double alpha);
void mirror_step(const MirrorMap& map, std::span<const double> x,
                 std::span<const double> g, double alpha, std::span<double> out);

/// Lifts every coordinate to at least `floor` and renormalizes, giving an
/// interior starting point for the entropic geometry. Points already at
/// or above the floor are returned unchanged.
Point clamp_interior(std::span<const double> x, double floor = 1e-15);

}  // namespace mdkit
