#pragma once

#include <span>
#include <utility>
#include <vector>

namespace fracheat::kernel {

/// Stability index and dimension of the free-space semigroup exp(t * Δ^{α/2}).
struct KernelParams {
  double alpha = 2.0;  ///< in (0, 2]
  int d = 1;           ///< spatial dimension, >= 1

  void validate() const;
};

/// The two comparison shapes for the free kernel:
///   min_form = t^{-d/α} ∧ t r^{-(d+α)},   sum_form = t / (t^{1/α} + r)^{d+α}.
/// `lower` and `upper` carry the min-form value; constants are applied by callers.
struct EnvelopePair {
  double lower = 0.0;
  double upper = 0.0;
  double min_form = 0.0;
  double sum_form = 0.0;
};

struct KernelValue {
  double density = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Gaussian (α = 2) or Cauchy (α = 1) density at distance r; any d.
/// Throws PreconditionError for other α ("no closed form").
double closed_form_kernel(double t, double r, const KernelParams& params);

/// Density of the α-stable semigroup at time t and distance r.
/// d = 1 always goes through Fourier inversion (even for α ∈ {1, 2}, so the
/// closed forms stay an independent check); d > 1 is only supported for
/// α ∈ {1, 2}, where it delegates to the closed form.
double stable_kernel(double t, double r, const KernelParams& params);

/// Same as stable_kernel for d = 1, with the quadrature diagnostics.
/// (1/π) ∫_0^∞ exp(-t ρ^α) cos(ρ r) dρ, panels no wider than π/(2r).
/// For α < 2 and r >= 8 t^{1/α} the large-distance power series is used
/// instead whenever it converges to 1e-15 (panels = 0 then); the Fourier
/// integral loses relative accuracy to cancellation that far out.
KernelValue stable_kernel_1d(double t, double r, double alpha);

EnvelopePair envelope(double t, double r, const KernelParams& params);

struct SamplePoint {
  double t = 0.0;
  double r = 0.0;
};

struct EnvelopeConstants {
  double c1_hat = 0.0;  ///< inf of p / min_form over the grid
  double c2_hat = 0.0;  ///< sup of p / min_form over the grid
  SamplePoint argmin;
  SamplePoint argmax;
  /// False at α = 2: Gaussian tails are not bounded below by the min-form,
  /// so only the upper constant is meaningful there.
  bool lower_certified = true;
  std::size_t samples = 0;
};

EnvelopeConstants estimate_envelope_constants(const KernelParams& params,
                                              std::span<const SamplePoint> grid);

/// Tensor product of t and r values.
std::vector<SamplePoint> tensor_grid(std::span<const double> ts, std::span<const double> rs);

}  // namespace fracheat::kernel
