#include <gtest/gtest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <cmath>

#include "fracheat/construct.hpp"
#include "fracheat/dirichlet.hpp"

using namespace fracheat;

namespace {

DichotomyParams params(double q, double alpha = 1.5) {
  DichotomyParams p;
  p.q = q;
  p.alpha = alpha;
  return p;
}

}  // namespace

TEST(Thm33, SupercriticalPowerLayers) {
  const auto f = GrowthFunction::power(6);
  const double nu = 0.1925;
  const auto spec = build_layers_thm33(f, params(2), 3, nu, 1.0);
  ASSERT_EQ(spec.K(), 3u);
  EXPECT_EQ(spec.kind, ConstructionKind::lq_ball);
  const double p = 4, q = 2, alpha = 1.5;
  double prev = 0;
  for (const auto& l : spec.layers) {
    const double k = static_cast<double>(l.k);
    // Defining inequality, re-checked directly.
    EXPECT_GE(l.level, k);
    EXPECT_GE(f(l.level), std::pow(l.level, p) * std::exp(k / q));
    EXPECT_GE(l.level, prev);
    // Minimal on the dyadic lattice above the previous level.
    const double half = l.level / 2;
    EXPECT_TRUE(half < std::max(prev, k) || f(half) < std::pow(half, p) * std::exp(k / q));
    EXPECT_NEAR(l.radius, spec.eps * std::pow(l.level, -q) * std::pow(k, -alpha * q), 1e-15);
    EXPECT_NEAR(l.height, l.level / nu, 1e-12);
    EXPECT_LE(3 * l.radius, 1.0 * (1 + 1e-12));
    prev = l.level;
  }
  EXPECT_DOUBLE_EQ(spec.eps, 1.0);
}

TEST(Thm33, NormBoundBelowZetaBound) {
  const double nu = 0.2;
  const auto spec = build_layers_thm33(GrowthFunction::power(6), params(2), 3, nu, 1.0);
  double closed = 0;
  for (int k = 1; k <= 3; ++k) closed += std::pow(k, -1.5);
  closed *= std::sqrt(2.0 * spec.eps) / nu;
  EXPECT_NEAR(spec.analytic_norm_bound, closed, 1e-12 * closed);
  EXPECT_LE(spec.analytic_norm_bound, std::sqrt(2.0 * spec.eps) / nu * boost::math::zeta(1.5));
  EXPECT_NEAR(boost::math::zeta(1.5), 2.6124, 1e-4);
}

TEST(Thm33, CriticalPowerRefused) {
  try {
    build_layers_thm33(GrowthFunction::power(4), params(2), 3, 0.2, 1.0);
    FAIL() << "expected refusal";
  } catch (const LayerConstructionError& e) {
    EXPECT_EQ(e.failing_layer(), 1u);
  }
}

TEST(Thm33, LogarithmicallySupercriticalRunsOutOfRange) {
  // phi_k is about exp(e^{k/2}), so the dyadic search leaves double range after k = 10.
  const auto f = GrowthFunction::parse("powerlog:1,4,1");
  EXPECT_EQ(build_layers_thm33(f, params(2), 3, 0.2, 1.0).K(), 3u);
  try {
    build_layers_thm33(f, params(2), 12, 0.2, 1.0);
    FAIL() << "expected refusal";
  } catch (const LayerConstructionError& e) {
    EXPECT_EQ(e.failing_layer(), 11u);
  }
}

TEST(Thm41, CriticalPowerBuilds) {
  const auto spec = build_layers_thm41(GrowthFunction::power(2.5), params(1), 2, 0.27, 1.0);
  ASSERT_GE(spec.K(), 1u);
  for (const auto& l : spec.layers) {
    const double beta = std::pow(l.k, 1.5) * l.level;
    EXPECT_NEAR(l.radius, 1 / beta, 1e-12 / beta);
    EXPECT_LT(l.radius, 1.0 / 3);
    EXPECT_GE(l.schedule, static_cast<double>(l.k));
    EXPECT_GT(l.xi, l.k_n);
  }
  double bound = 0;
  for (const auto& l : spec.layers) bound += 2 * std::pow(l.k, -1.5);
  EXPECT_NEAR(spec.analytic_norm_bound, bound, 1e-12);
}

TEST(Thm41, SubcriticalRefused) {
  EXPECT_THROW(build_layers_thm41(GrowthFunction::power(1), params(1), 2, 0.27, 1.0), PreconditionError);
}

TEST(WholeSpace, DisjointBallsAndDefiningInequality) {
  const auto f = GrowthFunction::parse("powerlog:1,0.5,0+powerlog:1,2,0");
  const auto spec = build_layers_whole_space(f, params(2), 4, 0.2);
  ASSERT_EQ(spec.K(), 4u);
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    const double n = static_cast<double>(l.k);
    EXPECT_LE(l.level, std::pow(n, -1.5));
    EXPECT_GE(f(l.level), std::pow(n, 3.0) * l.level);
    for (std::size_t j = i + 1; j < spec.layers.size(); ++j) {
      const auto& m = spec.layers[j];
      EXPECT_GT(std::abs(l.center - m.center), l.radius + m.radius);
    }
  }
}

TEST(Realize, SingleLayerNorm) {
  StackedIndicatorSpec spec;
  spec.q = 2;
  const double nu = 0.2;
  spec.layers.push_back({1, 1.0, 1.0 / nu, 0.1, 0.0});
  const auto g = Grid1D::dirichlet(1, 999);
  EXPECT_NEAR(realize(spec, g).norm_lq(2), std::sqrt(0.2) / nu, 0.05 * std::sqrt(0.2) / nu);
}

TEST(Realize, EmptySpecIsZero) {
  const auto u = realize(StackedIndicatorSpec{}, Grid1D::dirichlet(1, 99));
  EXPECT_EQ(u.max_abs(), 0.0);
}

TEST(Realize, UnresolvedLayerNamed) {
  const auto g = Grid1D::dirichlet(1, 99);
  StackedIndicatorSpec spec;
  spec.layers.push_back({1, 1, 1, 0.2, 0});
  spec.layers.push_back({2, 1, 1, g.spacing() / 10, 0});
  try {
    realize(spec, g);
    FAIL();
  } catch (const LayerConstructionError& e) {
    EXPECT_EQ(e.failing_layer(), 2u);
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(Realize, TruncationsNestedAndBounded) {
  const auto spec = build_layers_thm33(GrowthFunction::power(6), params(2), 2, 0.2, 1.0);
  const auto g = Grid1D::dirichlet(1, 1799);
  const Field one = realize(spec.truncated(1), g), two = realize(spec.truncated(2), g);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_LE(one[i], two[i]);
  EXPECT_LE(two.norm_lq(2), 1.1 * spec.truncated(2).analytic_norm_bound);
  EXPECT_THROW(spec.truncated(3), PreconditionError);
}

TEST(Escalation, ZeroGrowthIsFlat) {
  const auto op = assemble(Grid1D::dirichlet(1, 399), 1.5);
  const auto spec = build_layers_thm33(GrowthFunction::power(6), params(2), 1, 0.2, 1.0);
  const auto rows = escalation_experiment(op, GrowthFunction::parse("zero"), spec, {1}, {1e-4, 1e-5, 1e12});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, TrajectoryStatus::completed);
  EXPECT_NEAR(rows[0].sup_norm_lq, rows[0].u0_norm_lq, 1e-12 * rows[0].u0_norm_lq);
  EXPECT_FALSE(rows[0].t_star.has_value());
}

TEST(Escalation, SupercriticalTrend) {
  const auto op = assemble(Grid1D::dirichlet(1, 799), 1.5);
  const auto f = GrowthFunction::power(6);
  const auto spec = build_layers_thm33(f, params(2), 2, 0.19, 1.0);
  const auto rows = escalation_experiment(op, f, spec, {1, 2}, {2e-9, 2e-11, 1e12});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_GT(rows[1].sup_norm_lq, rows[0].sup_norm_lq);
  EXPECT_EQ(rows[1].layers_built, 2u);
}
