#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "fracheat/engine.hpp"
#include "fracheat/grid.hpp"

namespace fracheat {

/// Normalizing constant C(1, α) = 2^α Γ((1+α)/2) / (π^{1/2} |Γ(-α/2)|) of the
/// 1-D fractional Laplacian as a singular integral.
double fractional_laplacian_constant(double alpha);

/// Restricted (exterior-zero) fractional Laplacian Δ^{α/2} on (-R, R),
/// discretized as a singular integral:
///   - |y - x_i| < h: second-order Taylor term, i.e. a second difference;
///   - |y - x_i| > h: piecewise-linear interpolation of u (hat weights),
///     with u = 0 at and beyond ±R.
/// The matrix is symmetric with non-negative off-diagonals, so exp(tA) is
/// positivity preserving. α = 2 reduces to the 3-point Laplacian.
/// The full eigendecomposition is computed at construction.
class DirichletOperator final : public SpectralEngine {
 public:
  DirichletOperator(const Grid1D& grid, double alpha);

  const Grid1D& grid() const override { return grid_; }
  double alpha() const override { return alpha_; }
  std::span<const double> eigenvalues() const override { return eigenvalues_; }
  std::vector<double> forward(std::span<const double> values) const override;
  std::vector<double> inverse(std::span<const double> coeffs) const override;
  double positivity_tolerance() const override { return 1e-12; }

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  /// Smallest eigenvalue of -A (the discrete λ_0).
  double lambda1() const { return -eigenvalues_.back(); }
  /// Diagonal of exp(tA); its maximum over h is sup_j ‖S(t) e_j / h‖_∞.
  std::vector<double> semigroup_diagonal(double t) const;

 private:
  Grid1D grid_;
  double alpha_;
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd eigenvectors_;
  std::vector<double> eigenvalues_;  // ascending: most negative first
};

/// Shorthand for constructing the operator (assembly + eigendecomposition).
DirichletOperator assemble(const Grid1D& grid, double alpha);

/// Time grid whose spreads t^{1/α} are integer multiples of h, log-spaced
/// between spread_lo and spread_hi (duplicates removed). With r on a node this
/// puts r + t^{1/α} on a node too, so node sampling does not jitter with h.
std::vector<double> node_aligned_times(const Grid1D& grid, double alpha, double spread_lo,
                                       double spread_hi, std::size_t count);

struct IndicatorBound {
  double c_hat = 0.0;
  double t = 0.0;  ///< minimizing time
  double x = 0.0;  ///< minimizing node
};

/// min over t and nodes |x_i| <= r + t^{1/α} of [S(t)χ_r](x_i) ((r + t^{1/α})/r)^d.
IndicatorBound verify_indicator_lower_bound(const DirichletOperator& op, double r, double delta,
                                            std::span<const double> t_grid);

struct MassBound {
  double mu_hat = 0.0;
  double t = 0.0;
};

/// min over t of h Σ [S(t)χ_r](x_i) / r^d.
MassBound verify_mass_lower_bound(const DirichletOperator& op, double r, double delta,
                                  std::span<const double> t_grid);

/// min over t <= min(δ^α, r^α) and nodes |x_i| <= r + t^{1/α} of [S(t)χ_r](x_i).
/// Times in t_grid beyond r^α are ignored; at least one must remain.
IndicatorBound verify_uniform_lower_bound(const DirichletOperator& op, double r, double delta,
                                          std::span<const double> t_grid);

struct SmoothingFit {
  double fitted_exponent = 0.0;  ///< slope of log M(t) against log t
  double c_smooth = 0.0;         ///< exp(intercept)
  std::vector<double> times;
  std::vector<double> sup_kernel;  ///< M(t)
  std::size_t fit_points = 0;
};

/// M(t) = sup_j ‖S(t) e_j/h‖_∞ (the L¹ → L^∞ norm) on t_grid, fitted by least
/// squares on the small-t half of the grid.
SmoothingFit verify_smoothing(const DirichletOperator& op, std::span<const double> t_grid);

struct EmpiricalConstants {
  double c_hat = 0.0;
  double mu_hat = 0.0;
  double nu_hat = 0.0;
  double lambda0_hat = 0.0;
  double c_smooth = 0.0;
  double smoothing_exponent = 0.0;
};

/// All empirical constants at one (r, δ) geometry, with δ = r and node-aligned
/// times spanning spreads [δ/10, δ].
EmpiricalConstants estimate_constants(const DirichletOperator& op, double r);

}  // namespace fracheat
