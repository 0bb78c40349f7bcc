#include <gtest/gtest.h>

#include <cmath>

#include "fracheat/dirichlet.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/mild_solver.hpp"
#include "fracheat/periodic.hpp"

using namespace fracheat;

namespace {

double rel_l2(const Field& a, const Field& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

const DirichletOperator& heat() {
  static const auto op = assemble(Grid1D::dirichlet(1, 99), 2.0);
  return op;
}

const DirichletOperator& frac() {
  static const auto op = assemble(Grid1D::dirichlet(1, 99), 1.5);
  return op;
}

}  // namespace

TEST(Step, ZeroGrowthIsLinearFlow) {
  const Field u = indicator(frac().grid(), 0.3);
  const Field a = step_exponential_euler(frac(), GrowthFunction::parse("zero"), u, 1e-3);
  const Field b = frac().semigroup(1e-3, u);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(Solve, LinearGrowthOracleFirstOrder) {
  const Field u0 = sample(heat().grid(), [](double x) { return std::pow(1 - x * x, 2); });
  const Field exact = std::exp(0.5) * heat().semigroup(0.5, u0);
  auto err = [&](double dt) {
    NonlinearProblem p(heat(), GrowthFunction::power(1), u0, 2, 0.5, dt);
    return rel_l2(*solve(p).final_field, exact);
  };
  const double e1 = err(1e-3), e2 = err(5e-4);
  EXPECT_LE(e1, 1e-2);
  EXPECT_NEAR(e1 / e2, 2.0, 0.4);
}

TEST(Solve, ConstantForcingIsExact) {
  const auto& op = frac();
  NonlinearProblem p(op, GrowthFunction::power(0), Field(op.grid()), 2, 0.3, 1e-2);
  const Field ones(op.grid(), std::vector<double>(op.grid().size(), 1.0));
  const Field exact = op.apply_function([](double l) { return std::expm1(l * 0.3) / l; }, ones);
  EXPECT_LE(rel_l2(*solve(p).final_field, exact), 1e-12);
}

TEST(Solve, LinearFlowContracts) {
  NonlinearProblem p(frac(), GrowthFunction::parse("zero"), indicator(frac().grid(), 0.2), 2, 0.1, 1e-3);
  const auto traj = solve(p);
  EXPECT_EQ(traj.status, TrajectoryStatus::completed);
  for (std::size_t n = 1; n < traj.norm_lq.size(); ++n) EXPECT_LE(traj.norm_lq[n], traj.norm_lq[n - 1] * (1 + 1e-12));
}

TEST(Solve, SpatiallyConstantDataFollowsOde) {
  // On the torus constant data stays constant: u' = u^2, u = a/(1 - a t).
  const auto op = assemble_periodic(32, 1.0, 1.5);
  const double a = 2.0;
  NonlinearProblem p(op, GrowthFunction::power(2), Field(op.grid(), std::vector<double>(32, a)), 2, 0.4, 1e-4);
  const auto traj = solve(p);
  ASSERT_EQ(traj.status, TrajectoryStatus::completed);
  const double exact = a / (1 - a * 0.4);
  EXPECT_NEAR(traj.max_value.back(), exact, 2e-3 * exact);

  NonlinearProblem blow(op, GrowthFunction::power(2), Field(op.grid(), std::vector<double>(32, a)), 2, 1.0, 1e-4);
  const auto bt = solve(blow);
  ASSERT_EQ(bt.status, TrajectoryStatus::blowup_detected);
  ASSERT_TRUE(bt.t_star.has_value());
  EXPECT_NEAR(*bt.t_star, 1 / a, 0.01);
}

TEST(Solve, LargeDataBlowsUpSmallDataDoesNot) {
  const Field chi = indicator(heat().grid(), 0.2);
  NonlinearProblem big(heat(), GrowthFunction::power(2), 1e3 * chi, 2, 0.1, 1e-4);
  const auto bt = solve(big);
  EXPECT_EQ(bt.status, TrajectoryStatus::blowup_detected);
  ASSERT_TRUE(bt.t_star.has_value());
  EXPECT_LE(*bt.t_star, 5e-3);  // the ODE would blow up at 1e-3
  EXPECT_GE(*bt.t_star, 1e-3);
  NonlinearProblem small(heat(), GrowthFunction::power(2), 1e-3 * chi, 2, 0.1, 1e-3);
  EXPECT_EQ(solve(small).status, TrajectoryStatus::completed);
}

TEST(Solve, ComparisonAndLinearLowerBound) {
  const auto& op = frac();
  const Field lo = sample(op.grid(), [](double x) { return std::max(0.0, 1 - 4 * x * x); });
  const Field hi = 1.5 * lo;
  const auto f = GrowthFunction::parse("powerlog:1,2,1");
  NonlinearProblem a(op, f, lo, 2, 0.1, 1e-3), b(op, f, hi, 2, 0.1, 1e-3);
  const auto pa = picard_minimal_solution(a), pb = picard_minimal_solution(b);
  const auto times = a.time_grid();
  for (std::size_t n = 0; n < times.size(); ++n) {
    const Field lin = op.semigroup(times[n], lo);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      EXPECT_LE(pa.trajectory.states[n][i], pb.trajectory.states[n][i] + 1e-10);
      EXPECT_GE(pa.trajectory.states[n][i], lin[i] - 1e-10);
    }
  }
}

TEST(Solve, StepContinuity) {
  const Field u0 = indicator(frac().grid(), 0.3);
  auto jump = [&](double dt) {
    NonlinearProblem p(frac(), GrowthFunction::power(2), u0, 2, 0.05, dt);
    const auto pr = picard_minimal_solution(p);
    double worst = 0;
    for (std::size_t n = 1; n < pr.trajectory.states.size(); ++n) {
      Field d = pr.trajectory.states[n];
      d += -1.0 * pr.trajectory.states[n - 1];
      worst = std::max(worst, d.norm_l1());
    }
    return worst;
  };
  EXPECT_LT(jump(1e-3), jump(4e-3));
}

TEST(Picard, ZeroGrowthOneIteration) {
  NonlinearProblem p(frac(), GrowthFunction::parse("zero"), indicator(frac().grid(), 0.3), 2, 0.1, 1e-3);
  const auto r = picard_minimal_solution(p);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_EQ(r.trajectory.status, TrajectoryStatus::completed);
}

TEST(Picard, LinearGrowthMatchesOracle) {
  const Field u0 = sample(heat().grid(), [](double x) { return std::pow(1 - x * x, 2); });
  NonlinearProblem p(heat(), GrowthFunction::power(1, 0.5), u0, 2, 0.2, 1e-3);
  const auto r = picard_minimal_solution(p);
  ASSERT_EQ(r.trajectory.status, TrajectoryStatus::completed);
  const Field exact = std::exp(0.1) * heat().semigroup(0.2, u0);
  EXPECT_LE(rel_l2(r.trajectory.states.back(), exact), 1e-3);
}

TEST(Picard, HugeDataDiverges) {
  NonlinearProblem p(frac(), GrowthFunction::power(2), 1e3 * indicator(frac().grid(), 0.3), 2, 0.1, 1e-3);
  EXPECT_EQ(picard_minimal_solution(p).trajectory.status, TrajectoryStatus::picard_diverged);
}

TEST(Supersolution, ZeroIsNotASupersolution) {
  const auto& op = frac();
  const Field u0 = indicator(op.grid(), 0.3);
  NonlinearProblem p(op, GrowthFunction::power(2), u0, 2, 0.05, 1e-3);
  const auto times = p.time_grid();
  const std::vector<Field> v(times.size(), Field(op.grid()));
  EXPECT_FALSE(verify_supersolution(op, GrowthFunction::power(2), times, v, u0).is_supersolution);
}

TEST(Supersolution, BoundsTheMinimalSolution) {
  const auto op = assemble(Grid1D::dirichlet(1, 199), 1.5);
  const Field u0 = sample(op.grid(), [](double x) { return std::pow(std::max(0.0, 1 - 4 * x * x), 2); });
  const auto f = GrowthFunction::power(2);
  NonlinearProblem p(op, f, u0, 1, 0.1, 1e-3);
  const auto times = p.time_grid();
  const Field one(op.grid(), std::vector<double>(op.grid().size(), 1.0));
  std::vector<Field> v;
  for (double t : times) v.push_back(2.0 * op.semigroup(t, u0) + one);
  ASSERT_TRUE(verify_supersolution(op, f, times, v, u0).is_supersolution);
  const auto r = picard_minimal_solution(p);
  ASSERT_EQ(r.trajectory.status, TrajectoryStatus::completed);
  for (std::size_t n = 0; n < times.size(); ++n) {
    for (std::size_t i = 0; i < u0.size(); ++i) EXPECT_LE(r.trajectory.states[n][i], v[n][i] + 1e-10);
  }
}

TEST(Problem, Validation) {
  const Field u0 = indicator(frac().grid(), 0.3);
  EXPECT_THROW(solve(NonlinearProblem(frac(), GrowthFunction::power(2), -1.0 * u0, 2, 0.1, 1e-3)), PreconditionError);
  EXPECT_THROW(solve(NonlinearProblem(frac(), GrowthFunction::power(2), u0, 2, 0.1, 0.0)), PreconditionError);
  EXPECT_THROW(solve(NonlinearProblem(frac(), GrowthFunction::power(2), u0, 0.5, 0.1, 1e-3)), PreconditionError);
  const auto times = NonlinearProblem(frac(), GrowthFunction::power(2), u0, 2, 0.1, 0.03).time_grid();
  ASSERT_EQ(times.size(), 5u);
  EXPECT_DOUBLE_EQ(times.back(), 0.1);
}
