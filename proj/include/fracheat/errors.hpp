#pragma once

#include <stdexcept>
#include <string>

namespace fracheat {

/// Input violates an operation's contract: bad geometry, parameters outside
/// the hypotheses of a characterization, mismatched grids, unknown config keys.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The numerics lost a structural property they rely on (positivity of the
/// semigroup, monotonicity of the Picard iterates, eigensolver failure).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature exhausted its panel budget.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace fracheat
