#include "fracheat/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/quadrature.hpp"

namespace fracheat {

double fractional_laplacian_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw PreconditionError("fractional constant: alpha must lie in (0, 2)");
  }
  return std::pow(2.0, alpha) * std::tgamma(0.5 * (1.0 + alpha)) /
         (std::sqrt(std::numbers::pi) * std::abs(std::tgamma(-0.5 * alpha)));
}

namespace {

// ∫_0^1 (1 - s) (k + sign s)^{-1-α} ds. The integrand is analytic at distance
// >= 1 from [0, 1], so one Gauss-Kronrod panel is accurate to roundoff.
double hat_half(double k, double sign, double alpha) {
  auto f = [&](double s) { return (1.0 - s) * std::pow(k + sign * s, -1.0 - alpha); };
  return quad::detail::gauss_kronrod_15(f, 0.0, 1.0).value;
}

Eigen::MatrixXd assemble_matrix(const Grid1D& grid, double alpha) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double h = grid.spacing();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  if (alpha == 2.0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, i) = -2.0 / (h * h);
      if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = 1.0 / (h * h);
    }
    return a;
  }
  const double scale = fractional_laplacian_constant(alpha) * std::pow(h, -alpha);
  // Off-diagonal weight at offset k: the hat function centred at node k
  // against |z|^{-1-α} on [k-1, k+1] ∩ [1, ∞).
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    double v = hat_half(kk, 1.0, alpha);
    if (k >= 2) v += hat_half(kk, -1.0, alpha);
    w[static_cast<std::size_t>(k)] = scale * v;
  }
  // (u(x+z) + u(x-z) - 2u(x)) ≈ z² u'' on |z| < h, with u'' a second difference.
  const double w_singular = scale / (2.0 - alpha);
  // ∫_{|z|>h} |z|^{-1-α} dz, in units of h.
  const double diag = -2.0 * scale / alpha - 2.0 * w_singular;
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = diag;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double v = w[static_cast<std::size_t>(j - i)];
      if (j == i + 1) v += w_singular;
      a(i, j) = a(j, i) = v;
    }
  }
  return a;
}

}  // namespace

DirichletOperator::DirichletOperator(const Grid1D& grid, double alpha)
    : grid_(grid), alpha_(alpha) {
  if (grid.is_periodic()) throw PreconditionError("dirichlet: grid must be a Dirichlet grid");
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw PreconditionError("dirichlet: alpha must lie in (0, 2]");
  }
  matrix_ = assemble_matrix(grid, alpha);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "dirichlet: eigensolver failed (N=" << grid.size()
        << ", diagonal=" << matrix_(0, 0) << ", max |entry|=" << matrix_.cwiseAbs().maxCoeff()
        << ")";
    throw NumericalError(msg.str());
  }
  eigenvectors_ = solver.eigenvectors();
  const auto& ev = solver.eigenvalues();
  eigenvalues_.assign(ev.data(), ev.data() + ev.size());
  if (!(eigenvalues_.back() < 0.0)) {
    std::ostringstream msg;
    msg << "dirichlet: non-negative eigenvalue " << eigenvalues_.back()
        << " (condition estimate " << eigenvalues_.front() / eigenvalues_.back() << ")";
    throw NumericalError(msg.str());
  }
}

std::vector<double> DirichletOperator::forward(std::span<const double> values) const {
  Eigen::Map<const Eigen::VectorXd> u(values.data(), static_cast<Eigen::Index>(values.size()));
  std::vector<double> out(values.size());
  Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())).noalias() =
      eigenvectors_.transpose() * u;
  return out;
}

std::vector<double> DirichletOperator::inverse(std::span<const double> coeffs) const {
  Eigen::Map<const Eigen::VectorXd> c(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  std::vector<double> out(coeffs.size());
  Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())).noalias() =
      eigenvectors_ * c;
  return out;
}

std::vector<double> DirichletOperator::semigroup_diagonal(double t) const {
  const auto n = eigenvectors_.rows();
  Eigen::VectorXd decay(n);
  for (Eigen::Index k = 0; k < n; ++k) decay[k] = std::exp(eigenvalues_[k] * t);
  Eigen::VectorXd diag = eigenvectors_.cwiseAbs2() * decay;
  return {diag.data(), diag.data() + n};
}

DirichletOperator assemble(const Grid1D& grid, double alpha) { return {grid, alpha}; }

std::vector<double> node_aligned_times(const Grid1D& grid, double alpha, double spread_lo,
                                       double spread_hi, std::size_t count) {
  if (!(spread_lo > 0.0 && spread_hi >= spread_lo) || count == 0) {
    throw PreconditionError("node_aligned_times: need 0 < spread_lo <= spread_hi and count > 0");
  }
  const double h = grid.spacing();
  std::vector<double> out;
  long last = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    const double spread = spread_lo * std::pow(spread_hi / spread_lo, frac);
    long m = std::lround(spread / h);
    if (static_cast<double>(m) * h > spread_hi * (1.0 + 1e-12)) --m;
    if (m < 1 || m == last) continue;
    last = m;
    out.push_back(std::pow(static_cast<double>(m) * h, alpha));
  }
  if (out.empty()) throw PreconditionError("node_aligned_times: spread range below one cell");
  return out;
}

namespace {

void check_geometry(const DirichletOperator& op, double r, double delta,
                    std::span<const double> t_grid) {
  if (!(r > 0.0) || !(delta > 0.0)) throw PreconditionError("lower bound: need r > 0, delta > 0");
  if (r + 2.0 * delta > op.grid().half_width() * (1.0 + 1e-12)) {
    throw PreconditionError("lower bound: geometry violation r + 2 delta > R");
  }
  if (t_grid.empty()) throw PreconditionError("lower bound: empty time grid");
  const double t_max = std::pow(delta, op.alpha()) * (1.0 + 1e-12);
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= t_max)) {
      throw PreconditionError("lower bound: times must lie in (0, delta^alpha]");
    }
  }
}

// Nodes inside the closed ball of radius rho, with a tolerance that keeps
// node-aligned radii on the inside.
bool inside(double x, double rho, double h) { return std::abs(x) <= rho + 1e-9 * h; }

}  // namespace

IndicatorBound verify_indicator_lower_bound(const DirichletOperator& op, double r, double delta,
                                            std::span<const double> t_grid) {
  check_geometry(op, r, delta, t_grid);
  const auto& g = op.grid();
  const Field chi = indicator(g, r);
  IndicatorBound best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (double t : t_grid) {
    const Field s = op.semigroup(t, chi);
    const double rho = r + std::pow(t, 1.0 / op.alpha());
    const double factor = rho / r;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!inside(g.node(i), rho, g.spacing())) continue;
      const double v = s[i] * factor;
      if (v < best.c_hat) best = {v, t, g.node(i)};
    }
  }
  return best;
}

MassBound verify_mass_lower_bound(const DirichletOperator& op, double r, double delta,
                                  std::span<const double> t_grid) {
  check_geometry(op, r, delta, t_grid);
  const Field chi = indicator(op.grid(), r);
  MassBound best{std::numeric_limits<double>::infinity(), 0.0};
  for (double t : t_grid) {
    const double v = op.semigroup(t, chi).integral() / r;
    if (v < best.mu_hat) best = {v, t};
  }
  return best;
}

IndicatorBound verify_uniform_lower_bound(const DirichletOperator& op, double r, double delta,
                                          std::span<const double> t_grid) {
  check_geometry(op, r, delta, t_grid);
  const double t_cap = std::pow(r, op.alpha()) * (1.0 + 1e-12);
  std::vector<double> kept;
  for (double t : t_grid) {
    if (t <= t_cap) kept.push_back(t);
  }
  if (kept.empty()) throw PreconditionError("uniform lower bound: no time below r^alpha");
  const auto& g = op.grid();
  const Field chi = indicator(g, r);
  IndicatorBound best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (double t : kept) {
    const Field s = op.semigroup(t, chi);
    const double rho = r + std::pow(t, 1.0 / op.alpha());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!inside(g.node(i), rho, g.spacing())) continue;
      if (s[i] < best.c_hat) best = {s[i], t, g.node(i)};
    }
  }
  return best;
}

SmoothingFit verify_smoothing(const DirichletOperator& op, std::span<const double> t_grid) {
  const double t_max = std::pow(op.grid().half_width(), op.alpha()) * (1.0 + 1e-12);
  for (double t : t_grid) {
    if (!(t > 0.0 && t <= t_max)) throw PreconditionError("smoothing: times must lie in (0, R^alpha]");
  }
  SmoothingFit fit;
  fit.times.assign(t_grid.begin(), t_grid.end());
  std::sort(fit.times.begin(), fit.times.end());
  const double h = op.grid().spacing();
  for (double t : fit.times) {
    // S(t) is symmetric positive definite, so its largest entry sits on the diagonal.
    const auto diag = op.semigroup_diagonal(t);
    fit.sup_kernel.push_back(*std::max_element(diag.begin(), diag.end()) / h);
  }
  const std::size_t m = (fit.times.size() + 1) / 2;
  if (m < 4) throw PreconditionError("smoothing: fit needs at least 4 points in the small-t half");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(fit.times[i]);
    const double y = std::log(fit.sup_kernel[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(m);
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw PreconditionError("smoothing: degenerate time grid");
  fit.fitted_exponent = (n * sxy - sx * sy) / denom;
  fit.c_smooth = std::exp((sy - fit.fitted_exponent * sx) / n);
  fit.fit_points = m;
  return fit;
}

EmpiricalConstants estimate_constants(const DirichletOperator& op, double r) {
  const double delta = r;
  const auto times = node_aligned_times(op.grid(), op.alpha(), delta / 10.0, delta, 12);
  EmpiricalConstants out;
  out.c_hat = verify_indicator_lower_bound(op, r, delta, times).c_hat;
  out.mu_hat = verify_mass_lower_bound(op, r, delta, times).mu_hat;
  out.nu_hat = verify_uniform_lower_bound(op, r, delta, times).c_hat;
  out.lambda0_hat = op.lambda1();
  const double h = op.grid().spacing();
  const double lo = std::pow(10.0 * h, op.alpha());
  const double hi = std::pow(op.grid().half_width(), op.alpha());
  std::vector<double> smoothing_times;
  for (int i = 0; i < 16; ++i) smoothing_times.push_back(lo * std::pow(hi / lo, i / 15.0));
  const auto fit = verify_smoothing(op, smoothing_times);
  out.c_smooth = fit.c_smooth;
  out.smoothing_exponent = fit.fitted_exponent;
  return out;
}

}  // namespace fracheat
