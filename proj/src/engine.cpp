#include "fracheat/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracheat/errors.hpp"

namespace fracheat {

double exp_multiplier(double lambda, double dt) { return std::exp(lambda * dt); }

double phi1_multiplier(double lambda, double dt) {
  const double z = lambda * dt;
  if (std::abs(z) < 1e-300) return dt;
  return std::expm1(z) / lambda;
}

Field SpectralEngine::apply_function(const std::function<double(double)>& g,
                                     const Field& u) const {
  if (!(u.grid() == grid())) throw PreconditionError("engine: field lives on a different grid");
  auto coeffs = forward(u.values());
  const auto lambdas = eigenvalues();
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] *= g(lambdas[k]);
  return Field(grid(), inverse(coeffs));
}

Field SpectralEngine::semigroup(double t, const Field& u) const {
  if (!(t >= 0.0)) throw PreconditionError("semigroup: t must be >= 0");
  if (!(u.grid() == grid())) throw PreconditionError("semigroup: field lives on a different grid");
  if (t == 0.0) return u;
  Field out = apply_function([t](double lambda) { return exp_multiplier(lambda, t); }, u);
  if (u.min_value() >= 0.0) enforce_positivity(out, u.max_abs(), "semigroup");
  return out;
}

void SpectralEngine::enforce_positivity(Field& w, double scale, const char* where) const {
  const double floor = -positivity_tolerance() * std::max(1.0, scale);
  for (auto& v : w.values()) {
    if (v >= 0.0) continue;
    if (v >= floor) {
      v = 0.0;
    } else {
      throw NumericalError(std::string(where) + ": positivity violated (value " +
                           std::to_string(v) + ", tolerance " + std::to_string(floor) + ")");
    }
  }
}

}  // namespace fracheat
