#pragma once

#include <span>
#include <vector>

#include "fracheat/engine.hpp"
#include "fracheat/grid.hpp"

namespace fracheat {

/// Fractional Laplacian on the torus [-L, L) with Fourier symbol -|ξ_k|^α,
/// ξ_k = πk/L. Spectral coordinates are the real ("halfcomplex") FFT layout:
/// index 0 is the mean mode, indices 2k-1 and 2k hold the real and imaginary
/// parts of mode k, and index M-1 holds the Nyquist mode.
class PeriodicOperator final : public SpectralEngine {
 public:
  PeriodicOperator(const Grid1D& grid, double alpha);

  const Grid1D& grid() const override { return grid_; }
  double alpha() const override { return alpha_; }
  std::span<const double> eigenvalues() const override { return eigenvalues_; }
  std::vector<double> forward(std::span<const double> values) const override;
  std::vector<double> inverse(std::span<const double> coeffs) const override;
  double positivity_tolerance() const override { return 1e-10; }

 private:
  Grid1D grid_;
  double alpha_;
  std::vector<double> eigenvalues_;
};

PeriodicOperator assemble_periodic(std::size_t modes, double half_period, double alpha);

}  // namespace fracheat
