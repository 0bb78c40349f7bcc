#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fracheat/engine.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/grid.hpp"
#include "fracheat/growth.hpp"

namespace fracheat {

/// Raised when f(u) is not finite; solve() records it as a blowup.
class BlowupSignal : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// u(t) = S(t)u0 + ∫_0^t S(t-s) f(u(s)) ds on [0, T] with step dt.
/// The engine is borrowed and must outlive the problem.
struct NonlinearProblem {
  const SpectralEngine* engine = nullptr;
  GrowthFunction f = GrowthFunction::power_log({});
  Field u0;
  double q = 2.0;
  double T = 0.0;
  double dt = 0.0;
  double blowup_cap = 1e12;

  NonlinearProblem(const SpectralEngine& e, GrowthFunction fn, Field initial, double q_, double T_,
                   double dt_)
      : engine(&e), f(std::move(fn)), u0(std::move(initial)), q(q_), T(T_), dt(dt_) {}

  void validate() const;
  /// Step times 0 = t_0 < ... < t_n = T (the last step may be shorter).
  std::vector<double> time_grid() const;
};

enum class TrajectoryStatus { completed, blowup_detected, picard_diverged, iteration_limit };
const char* to_string(TrajectoryStatus s);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> norm_lq;
  std::vector<double> norm_l1;
  std::vector<double> max_value;
  TrajectoryStatus status = TrajectoryStatus::completed;
  std::optional<double> t_star;  ///< set when blowup is detected
  std::optional<Field> final_field;
  /// Every state on the time grid (Picard results only).
  std::vector<Field> states;

  double sup_norm_lq() const;
};

/// u' = e^{dtA}u + φ₁(dtA) dt f(u), per eigenmode. Throws BlowupSignal when
/// f(u) is not finite.
Field step_exponential_euler(const SpectralEngine& engine, const GrowthFunction& f, const Field& u,
                             double dt);

Trajectory solve(const NonlinearProblem& problem);

struct PicardResult {
  Trajectory trajectory;
  std::size_t iterations = 0;
};

/// Monotone iteration from v⁰(t_n) = S(t_n)u0 with left-endpoint Duhamel
/// quadrature and exact linear propagation. Throws NumericalError if an
/// iterate decreases anywhere by more than the slack.
PicardResult picard_minimal_solution(const NonlinearProblem& problem, std::size_t m_max = 200,
                                     double tol = 1e-8, double slack = 1e-10);

struct SupersolutionReport {
  bool is_supersolution = false;
  double max_violation = 0.0;  ///< max of F[v] - v over nodes and times
  double time_of_violation = 0.0;
};

/// Checks F[v](t_n) <= v(t_n) + slack max(1, sup v) on the given times
/// (t_0 must be 0), using the same quadrature as picard_minimal_solution.
SupersolutionReport verify_supersolution(const SpectralEngine& engine, const GrowthFunction& f,
                                         const std::vector<double>& times,
                                         const std::vector<Field>& v, const Field& u0,
                                         double slack = 1e-10);

/// F[v] on the time grid.
std::vector<Field> duhamel_map(const SpectralEngine& engine, const GrowthFunction& f,
                               const std::vector<double>& times, const std::vector<Field>& v,
                               const Field& u0);

}  // namespace fracheat
