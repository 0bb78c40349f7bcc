#include "fracheat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "fracheat/errors.hpp"
#include "fracheat/quadrature.hpp"

namespace fracheat::kernel {

namespace {

constexpr double kPi = std::numbers::pi;
// exp(-t ρ_max^α) = 1e-16 at the truncation point.
// Below this many spreads r / t^{1/α} the Fourier integral is always used.
const double kSeriesThreshold = 8.0;
const double kTailExponent = 16.0 * std::log(10.0);

void check_time_distance(double t, double r) {
  if (!(t > 0.0) || !std::isfinite(t)) throw PreconditionError("kernel: t must be positive");
  if (!(r >= 0.0) || !std::isfinite(r)) throw PreconditionError("kernel: r must be >= 0");
}

}  // namespace

void KernelParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw PreconditionError("kernel: alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (d < 1) throw PreconditionError("kernel: dimension d must be >= 1");
}

double closed_form_kernel(double t, double r, const KernelParams& params) {
  params.validate();
  check_time_distance(t, r);
  const double d = params.d;
  if (params.alpha == 2.0) {
    return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
  }
  if (params.alpha == 1.0) {
    const double half = 0.5 * (d + 1.0);
    return std::tgamma(half) * std::pow(kPi, -half) * t * std::pow(t * t + r * r, -half);
  }
  throw PreconditionError("kernel: no closed form for alpha = " + std::to_string(params.alpha));
}

namespace {

// Large-distance expansion of the unit-time density,
//   p(1, x) = (1/π) Σ_k (-1)^{k+1} Γ(αk+1)/k! sin(kπα/2) x^{-(αk+1)},
// convergent for α < 1 and asymptotic for 1 <= α < 2. Returns nothing unless
// the terms fall below 1e-15 of the partial sum before they start growing.
std::optional<KernelValue> tail_series(double x, double alpha) {
  double sum = 0.0;
  double prev_log = std::numeric_limits<double>::infinity();
  const double log_x = std::log(x);
  for (int k = 1; k <= 2000; ++k) {
    const double kk = k;
    const double log_mag = std::lgamma(alpha * kk + 1.0) - std::lgamma(kk + 1.0) - (alpha * kk + 1.0) * log_x;
    if (log_mag > prev_log) return std::nullopt;
    prev_log = log_mag;
    const double term = (k % 2 == 1 ? 1.0 : -1.0) * std::sin(kk * kPi * alpha / 2.0) * std::exp(log_mag);
    sum += term;
    if (sum > 0.0 && std::exp(log_mag) <= 1e-15 * sum) {
      return KernelValue{sum / kPi, std::exp(log_mag) / kPi, 0};
    }
  }
  return std::nullopt;
}

}  // namespace

KernelValue stable_kernel_1d(double t, double r, double alpha) {
  KernelParams{alpha, 1}.validate();
  check_time_distance(t, r);

  const double spread = std::pow(t, 1.0 / alpha);
  if (alpha < 2.0 && r >= kSeriesThreshold * spread) {
    if (auto v = tail_series(r / spread, alpha)) {
      v->density /= spread;
      v->error_estimate /= spread;
      return *v;
    }
  }

  const double rho_max = std::pow(kTailExponent / t, 1.0 / alpha);
  // ∫_0^∞ exp(-t ρ^α) dρ; sets the absolute accuracy scale.
  const double scale = std::tgamma(1.0 + 1.0 / alpha) * std::pow(t, -1.0 / alpha);

  const double width = r > 0.0 ? std::min(kPi / (2.0 * r), rho_max) : rho_max;
  const auto uniform = static_cast<std::size_t>(std::ceil(rho_max / width));
  if (uniform > 5'000'000) {
    throw QuadratureError("kernel: oscillation needs more than 5e6 panels", scale);
  }

  std::vector<double> breaks;
  breaks.reserve(uniform + 40);
  breaks.push_back(0.0);
  // exp(-t ρ^α) is not smooth at the origin for α < 2; start with a graded panel.
  for (int j = 30; j >= 1; --j) breaks.push_back(std::ldexp(width, -j));
  for (std::size_t i = 1; i <= uniform; ++i) {
    breaks.push_back(std::min(rho_max, width * static_cast<double>(i)));
  }
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto integrand = [t, r, alpha](double rho) {
    return std::exp(-t * std::pow(rho, alpha)) * std::cos(rho * r);
  };
  quad::Options opts;
  opts.abs_tol = 1e-15 * scale;
  opts.rel_tol = 1e-13;
  opts.max_panels = std::max<std::size_t>(400000, 4 * breaks.size());
  const auto res = quad::integrate(integrand, std::span<const double>(breaks), opts);
  if (!res.converged) {
    throw QuadratureError("kernel: quadrature did not converge within the panel budget (residual " +
                              std::to_string(res.error / kPi) + ")",
                          res.error / kPi);
  }
  return {res.value / kPi, res.error / kPi, res.panels};
}

double stable_kernel(double t, double r, const KernelParams& params) {
  params.validate();
  if (params.d == 1) return stable_kernel_1d(t, r, params.alpha).density;
  if (params.alpha == 1.0 || params.alpha == 2.0) return closed_form_kernel(t, r, params);
  throw PreconditionError("kernel: generic alpha is only supported for d = 1");
}

EnvelopePair envelope(double t, double r, const KernelParams& params) {
  params.validate();
  check_time_distance(t, r);
  const double d = params.d;
  const double a = params.alpha;
  const double on_diagonal = std::pow(t, -d / a);
  const double tail = r > 0.0 ? t * std::pow(r, -(d + a)) : std::numeric_limits<double>::infinity();
  EnvelopePair out;
  out.min_form = std::min(on_diagonal, tail);
  out.sum_form = t / std::pow(std::pow(t, 1.0 / a) + r, d + a);
  out.lower = out.min_form;
  out.upper = out.min_form;
  return out;
}

EnvelopeConstants estimate_envelope_constants(const KernelParams& params,
                                              std::span<const SamplePoint> grid) {
  params.validate();
  if (grid.empty()) throw PreconditionError("envelope constants: sample grid is empty");
  for (const auto& s : grid) {
    if (!(s.t > 0.0)) throw PreconditionError("envelope constants: sample with t <= 0");
  }
  EnvelopeConstants out;
  out.lower_certified = params.alpha < 2.0;
  out.c1_hat = std::numeric_limits<double>::infinity();
  out.c2_hat = 0.0;
  for (const auto& s : grid) {
    const double ratio = stable_kernel(s.t, s.r, params) / envelope(s.t, s.r, params).min_form;
    if (ratio < out.c1_hat) {
      out.c1_hat = ratio;
      out.argmin = s;
    }
    if (ratio > out.c2_hat) {
      out.c2_hat = ratio;
      out.argmax = s;
    }
  }
  out.samples = grid.size();
  return out;
}

std::vector<SamplePoint> tensor_grid(std::span<const double> ts, std::span<const double> rs) {
  std::vector<SamplePoint> out;
  out.reserve(ts.size() * rs.size());
  for (double t : ts) {
    for (double r : rs) out.push_back({t, r});
  }
  return out;
}

}  // namespace fracheat::kernel
