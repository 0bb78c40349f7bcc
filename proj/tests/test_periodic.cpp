#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracheat/errors.hpp"
#include "fracheat/periodic.hpp"

using namespace fracheat;

TEST(Periodic, RoundTrip) {
  const auto op = assemble_periodic(64, 3.0, 1.5);
  const Field u = sample(op.grid(), [](double x) { return std::exp(std::sin(x)) + 0.1 * x * x; });
  const auto back = op.inverse(op.forward(u.values()));
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(back[i], u[i], 1e-13);
}

TEST(Periodic, ConstantsAreFixed) {
  const auto op = assemble_periodic(128, 4.0, 1.3);
  const Field one(op.grid(), std::vector<double>(128, 1.0));
  for (double t : {0.01, 1.0, 100.0}) {
    const Field s = op.semigroup(t, one);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], 1.0, 1e-14);
  }
}

TEST(Periodic, MeanPreserved) {
  const auto op = assemble_periodic(128, 4.0, 1.7);
  const Field u = indicator(op.grid(), 0.7, 1.1);
  for (double t : {0.001, 0.1, 10.0}) EXPECT_NEAR(op.semigroup(t, u).integral(), u.integral(), 1e-12);
}

TEST(Periodic, CosineModeDecaysBySymbol) {
  const double L = 2.0, alpha = 1.4;
  const auto op = assemble_periodic(64, L, alpha);
  for (int k : {1, 3, 31}) {
    const Field u = sample(op.grid(), [&](double x) { return std::cos(std::numbers::pi * k * x / L); });
    const double t = 0.05;
    const double decay = std::exp(-std::pow(std::numbers::pi * k / L, alpha) * t);
    const Field s = op.apply_function([t](double l) { return std::exp(l * t); }, u);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(s[i], decay * u[i], 1e-12);
  }
}

TEST(Periodic, NyquistMode) {
  const double L = 1.0;
  const auto op = assemble_periodic(16, L, 2.0);
  const Field u = sample(op.grid(), [&](double x) { return std::cos(std::numbers::pi * 8 * x / L); });
  const double t = 1e-3;
  const Field s = op.apply_function([t](double l) { return std::exp(l * t); }, u);
  const double decay = std::exp(-std::pow(8 * std::numbers::pi, 2) * t);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(s[i], decay * u[i], 1e-12);
}

TEST(Periodic, HeatConvolutionOfGaussian) {
  // e^{-x^2} convolved with the heat kernel is (1+4t)^{-1/2} e^{-x^2/(1+4t)}.
  const auto op = assemble_periodic(512, 16.0, 2.0);
  const Field u = sample(op.grid(), [](double x) { return std::exp(-x * x); });
  for (double t : {0.01, 0.1, 1.0}) {
    const Field s = op.semigroup(t, u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double x = op.grid().node(i);
      EXPECT_NEAR(s[i], std::exp(-x * x / (1 + 4 * t)) / std::sqrt(1 + 4 * t), 1e-6);
    }
  }
}

TEST(Periodic, Preconditions) {
  EXPECT_THROW(assemble_periodic(63, 1.0, 1.5), PreconditionError);
  EXPECT_THROW(assemble_periodic(64, -1.0, 1.5), PreconditionError);
  EXPECT_THROW(assemble_periodic(64, 1.0, 2.5), PreconditionError);
}
