#include "fracheat/periodic.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/FFT>

#include "fracheat/errors.hpp"

namespace fracheat {

PeriodicOperator::PeriodicOperator(const Grid1D& grid, double alpha)
    : grid_(grid), alpha_(alpha) {
  if (!grid.is_periodic()) throw PreconditionError("periodic: grid must be periodic");
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw PreconditionError("periodic: alpha must lie in (0, 2]");
  }
  const std::size_t m = grid.size();
  const double base = std::numbers::pi / grid.half_width();
  eigenvalues_.assign(m, 0.0);
  for (std::size_t k = 1; k < m / 2; ++k) {
    const double lambda = -std::pow(base * static_cast<double>(k), alpha);
    eigenvalues_[2 * k - 1] = lambda;
    eigenvalues_[2 * k] = lambda;
  }
  eigenvalues_[m - 1] = -std::pow(base * static_cast<double>(m / 2), alpha);
}

std::vector<double> PeriodicOperator::forward(std::span<const double> values) const {
  const std::size_t m = grid_.size();
  std::vector<double> in(values.begin(), values.end());
  std::vector<std::complex<double>> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, in);
  std::vector<double> out(m);
  out[0] = spec[0].real();
  for (std::size_t k = 1; k < m / 2; ++k) {
    out[2 * k - 1] = spec[k].real();
    out[2 * k] = spec[k].imag();
  }
  out[m - 1] = spec[m / 2].real();
  return out;
}

std::vector<double> PeriodicOperator::inverse(std::span<const double> coeffs) const {
  const std::size_t m = grid_.size();
  std::vector<std::complex<double>> spec(m);
  spec[0] = coeffs[0];
  for (std::size_t k = 1; k < m / 2; ++k) {
    spec[k] = {coeffs[2 * k - 1], coeffs[2 * k]};
    spec[m - k] = std::conj(spec[k]);
  }
  spec[m / 2] = coeffs[m - 1];
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.inv(out, spec);
  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = out[i].real();
  return values;
}

PeriodicOperator assemble_periodic(std::size_t modes, double half_period, double alpha) {
  return {Grid1D::periodic(half_period, modes), alpha};
}

}  // namespace fracheat
