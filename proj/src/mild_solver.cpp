#include "fracheat/mild_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracheat/numeric.hpp"

namespace fracheat {

void NonlinearProblem::validate() const {
  if (engine == nullptr) throw PreconditionError("problem: no engine");
  if (!(u0.grid() == engine->grid())) throw PreconditionError("problem: u0 lives on a different grid");
  if (!(u0.min_value() >= 0.0) || !u0.all_finite()) {
    throw PreconditionError("problem: u0 must be finite and non-negative");
  }
  if (!(f(0.0) >= 0.0)) throw PreconditionError("problem: need f(0) >= 0");
  if (!(q >= 1.0)) throw PreconditionError("problem: need q >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("problem: need T > 0");
  if (!(dt > 0.0 && dt <= T)) throw PreconditionError("problem: need 0 < dt <= T");
  if (!(blowup_cap > 0.0)) throw PreconditionError("problem: need blowup_cap > 0");
}

std::vector<double> NonlinearProblem::time_grid() const {
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(T / dt - 1e-9)));
  std::vector<double> t(steps + 1);
  for (std::size_t n = 0; n < steps; ++n) t[n] = static_cast<double>(n) * dt;
  t[steps] = T;
  return t;
}

const char* to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::blowup_detected: return "blowup_detected";
    case TrajectoryStatus::picard_diverged: return "picard_diverged";
    case TrajectoryStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

double Trajectory::sup_norm_lq() const {
  double m = 0.0;
  for (double v : norm_lq) m = std::max(m, v);
  return m;
}

namespace {

Field apply_f(const GrowthFunction& f, const Field& u) {
  Field out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f(u[i]);
  return out;
}

void record(Trajectory& tr, double t, const Field& u, double q) {
  tr.times.push_back(t);
  tr.norm_lq.push_back(u.norm_lq(q));
  tr.norm_l1.push_back(u.norm_l1());
  tr.max_value.push_back(u.max_abs());
}

}  // namespace

Field step_exponential_euler(const SpectralEngine& engine, const GrowthFunction& f, const Field& u,
                             double dt) {
  if (!(u.grid() == engine.grid())) throw PreconditionError("step: field lives on a different grid");
  const Field fu = apply_f(f, u);
  if (!fu.all_finite()) throw BlowupSignal("step: f(u) is not finite");
  auto c = engine.forward(u.values());
  const auto fc = engine.forward(fu.values());
  const auto lambdas = engine.eigenvalues();
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = exp_multiplier(lambdas[k], dt) * c[k] + phi1_multiplier(lambdas[k], dt) * fc[k];
  }
  Field out(engine.grid(), engine.inverse(c));
  if (u.min_value() >= 0.0) {
    engine.enforce_positivity(out, std::max(u.max_abs(), dt * fu.max_abs()), "exponential Euler");
  }
  return out;
}

Trajectory solve(const NonlinearProblem& problem) {
  problem.validate();
  const auto times = problem.time_grid();
  Trajectory tr;
  Field u = problem.u0;
  record(tr, 0.0, u, problem.q);
  for (std::size_t n = 1; n < times.size(); ++n) {
    bool blown = false;
    try {
      u = step_exponential_euler(*problem.engine, problem.f, u, times[n] - times[n - 1]);
      blown = !u.all_finite();
    } catch (const BlowupSignal&) {
      blown = true;
    }
    if (blown) {
      tr.status = TrajectoryStatus::blowup_detected;
      tr.t_star = times[n];
      return tr;
    }
    record(tr, times[n], u, problem.q);
    if (tr.norm_lq.back() > problem.blowup_cap || !std::isfinite(tr.norm_lq.back())) {
      tr.status = TrajectoryStatus::blowup_detected;
      tr.t_star = times[n];
      return tr;
    }
  }
  tr.final_field = u;
  return tr;
}

std::vector<Field> duhamel_map(const SpectralEngine& engine, const GrowthFunction& f,
                               const std::vector<double>& times, const std::vector<Field>& v,
                               const Field& u0) {
  if (times.empty() || times.front() != 0.0) throw PreconditionError("duhamel: time grid must start at 0");
  if (v.size() != times.size()) throw PreconditionError("duhamel: one field per time required");
  for (const auto& w : v) require_same_grid(w, u0, "duhamel");
  if (!(u0.grid() == engine.grid())) throw PreconditionError("duhamel: grid mismatch with engine");
  const auto lambdas = engine.eigenvalues();
  const std::size_t m = lambdas.size();
  const auto c0 = engine.forward(u0.values());
  std::vector<double> g(m, 0.0);
  std::vector<Field> out;
  out.reserve(times.size());
  const double scale = u0.max_abs();
  for (std::size_t n = 0; n < times.size(); ++n) {
    if (n > 0) {
      const double dt = times[n] - times[n - 1];
      if (!(dt > 0.0)) throw PreconditionError("duhamel: times must be strictly increasing");
      const Field fv = apply_f(f, v[n - 1]);
      if (!fv.all_finite()) throw BlowupSignal("duhamel: f(v) is not finite");
      const auto fc = engine.forward(fv.values());
      for (std::size_t k = 0; k < m; ++k) {
        g[k] = exp_multiplier(lambdas[k], dt) * g[k] + phi1_multiplier(lambdas[k], dt) * fc[k];
      }
    }
    std::vector<double> c(m);
    for (std::size_t k = 0; k < m; ++k) c[k] = exp_multiplier(lambdas[k], times[n]) * c0[k] + g[k];
    Field w(engine.grid(), engine.inverse(c));
    double local_scale = scale;
    if (n > 0) local_scale = std::max(scale, v[n - 1].max_abs());
    engine.enforce_positivity(w, local_scale, "Duhamel map");
    out.push_back(std::move(w));
  }
  return out;
}

PicardResult picard_minimal_solution(const NonlinearProblem& problem, std::size_t m_max, double tol,
                                     double slack) {
  problem.validate();
  const auto times = problem.time_grid();
  const auto& engine = *problem.engine;
  std::vector<Field> v;
  v.reserve(times.size());
  for (double t : times) v.push_back(engine.semigroup(t, problem.u0));

  auto diverged = [&](const std::vector<Field>& w) {
    for (const auto& x : w) {
      const double nrm = x.norm_lq(problem.q);
      if (!std::isfinite(nrm) || nrm > problem.blowup_cap) return true;
    }
    return false;
  };

  PicardResult result;
  TrajectoryStatus status = TrajectoryStatus::iteration_limit;
  for (std::size_t m = 1; m <= m_max; ++m) {
    std::vector<Field> next;
    try {
      next = duhamel_map(engine, problem.f, times, v, problem.u0);
    } catch (const BlowupSignal&) {
      status = TrajectoryStatus::picard_diverged;
      result.iterations = m;
      break;
    }
    double change = 0.0, top = 0.0;
    for (std::size_t n = 0; n < times.size(); ++n) {
      for (std::size_t i = 0; i < next[n].size(); ++i) {
        const double a = v[n][i], b = next[n][i];
        const double floor = -slack * std::max(1.0, std::abs(a));
        if (b - a < floor) {
          throw NumericalError("picard: iterate decreased by " + format_double(a - b) +
                               " at t=" + format_double(times[n]));
        }
        change = std::max(change, std::abs(b - a));
        top = std::max(top, std::abs(b));
      }
    }
    v = std::move(next);
    result.iterations = m;
    if (diverged(v)) {
      status = TrajectoryStatus::picard_diverged;
      break;
    }
    if (change <= tol * std::max(1.0, top)) {
      status = TrajectoryStatus::completed;
      break;
    }
  }
  auto& tr = result.trajectory;
  tr.status = status;
  for (std::size_t n = 0; n < times.size(); ++n) record(tr, times[n], v[n], problem.q);
  if (status == TrajectoryStatus::completed) tr.final_field = v.back();
  tr.states = std::move(v);
  return result;
}

SupersolutionReport verify_supersolution(const SpectralEngine& engine, const GrowthFunction& f,
                                         const std::vector<double>& times,
                                         const std::vector<Field>& v, const Field& u0,
                                         double slack) {
  SupersolutionReport report;
  std::vector<Field> image;
  try {
    image = duhamel_map(engine, f, times, v, u0);
  } catch (const BlowupSignal&) {
    report.max_violation = std::numeric_limits<double>::infinity();
    return report;
  }
  double top = 0.0;
  for (const auto& w : v) top = std::max(top, w.max_abs());
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < times.size(); ++n) {
    for (std::size_t i = 0; i < v[n].size(); ++i) {
      const double excess = image[n][i] - v[n][i];
      if (excess > report.max_violation) {
        report.max_violation = excess;
        report.time_of_violation = times[n];
      }
    }
  }
  report.is_supersolution = report.max_violation <= slack * std::max(1.0, top);
  return report;
}

}  // namespace fracheat
