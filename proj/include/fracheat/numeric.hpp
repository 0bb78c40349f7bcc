#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace fracheat {

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

/// n points from lo to hi (both > 0), equally spaced in log.
inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
  auto exps = linspace(std::log(lo), std::log(hi), n);
  for (auto& e : exps) e = std::exp(e);
  if (n > 0) {
    exps.front() = lo;
    exps.back() = hi;
  }
  return exps;
}

/// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
  const double half_d = 0.5 * d;
  return std::pow(std::numbers::pi, half_d) / std::tgamma(half_d + 1.0);
}

/// Round-trippable decimal representation ("%.17g"), used for every CSV and
/// report number so repeated runs are byte-identical.
std::string format_double(double value);

}  // namespace fracheat
