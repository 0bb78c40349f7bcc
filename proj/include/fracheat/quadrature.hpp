#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace fracheat::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_panels = 200000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;  ///< sum of per-panel |K15 - G7|
  std::size_t panels = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights at Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod integration over the consecutive
/// panels delimited by `breakpoints` (at least two, increasing). The panel
/// with the largest error estimate is bisected until the summed estimate is
/// within max(abs_tol, rel_tol*|value|) or the panel budget runs out.
template <class F>
Result integrate(F&& f, std::span<const double> breakpoints, const Options& opts = {}) {
  Result out;
  if (breakpoints.size() < 2) return out;
  std::priority_queue<detail::Panel> queue;
  double total_value = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    auto panel = detail::gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]);
    total_value += panel.value;
    total_error += panel.error;
    queue.push(panel);
  }
  const double span_width = breakpoints.back() - breakpoints.front();
  std::vector<detail::Panel> frozen;
  while (!queue.empty() &&
         total_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value)) &&
         queue.size() + frozen.size() < opts.max_panels) {
    auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.b - worst.a < 1e-13 * span_width || mid <= worst.a || mid >= worst.b) {
      frozen.push_back(worst);
      continue;
    }
    auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    total_value += left.value + right.value - worst.value;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum in left-to-right order so the result does not depend on the
  // refinement history through cancellation in the running totals.
  std::vector<detail::Panel> panels = std::move(frozen);
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  out.value = 0.0;
  out.error = 0.0;
  for (const auto& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.panels = panels.size();
  out.converged = out.error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value));
  return out;
}

template <class F>
Result integrate(F&& f, double a, double b, const Options& opts = {}) {
  const std::array<double, 2> ends{a, b};
  return integrate(std::forward<F>(f), std::span<const double>(ends), opts);
}

}  // namespace fracheat::quad
