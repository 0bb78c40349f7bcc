#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracheat/grid.hpp"

namespace fracheat {

/// Symmetric, diagonalizable generator A (a discretization of Δ^{α/2}) with an
/// orthogonal change of basis to coordinates where A is diagonal. Every
/// linear operation the solvers need is a spectral multiplier g(A).
///
/// Implementations are immutable after construction; all const members may be
/// called concurrently.
class SpectralEngine {
 public:
  virtual ~SpectralEngine() = default;

  virtual const Grid1D& grid() const = 0;
  virtual double alpha() const = 0;
  /// Eigenvalue of A attached to each spectral coordinate (all <= 0).
  virtual std::span<const double> eigenvalues() const = 0;
  /// Physical values -> spectral coordinates.
  virtual std::vector<double> forward(std::span<const double> values) const = 0;
  /// Spectral coordinates -> physical values.
  virtual std::vector<double> inverse(std::span<const double> coeffs) const = 0;
  /// Largest |negative value| (relative to max(1, ‖u‖_∞)) treated as roundoff
  /// when positivity is enforced.
  virtual double positivity_tolerance() const = 0;

  /// g(A) u.
  Field apply_function(const std::function<double(double)>& g, const Field& u) const;

  /// S(t) u = exp(tA) u. Negative roundoff above the positivity tolerance is
  /// clamped to zero when u >= 0; anything larger throws NumericalError.
  Field semigroup(double t, const Field& u) const;

  /// Zero out negative roundoff in `w`, given the scale of the data it came
  /// from. Throws NumericalError past the tolerance.
  void enforce_positivity(Field& w, double scale, const char* where) const;
};

/// exp(λ dt)
double exp_multiplier(double lambda, double dt);
/// ∫_0^dt exp(λ s) ds = (exp(λ dt) - 1)/λ, equal to dt at λ = 0.
double phi1_multiplier(double lambda, double dt);

}  // namespace fracheat
