#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "fracheat/errors.hpp"
#include "fracheat/kernel.hpp"
#include "fracheat/numeric.hpp"

using namespace fracheat;
using kernel::KernelParams;

TEST(ClosedForm, PeakAndCauchyValues) {
  EXPECT_NEAR(kernel::closed_form_kernel(1, 0, {2, 1}), 1 / std::sqrt(4 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(kernel::closed_form_kernel(1, 0, {1, 1}), 1 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(kernel::closed_form_kernel(2, 2, {1, 1}), 1 / (4 * std::numbers::pi), 1e-15);
}

TEST(ClosedForm, RejectsOtherAlpha) {
  EXPECT_THROW(kernel::closed_form_kernel(1, 0, {1.5, 1}), PreconditionError);
}

TEST(ClosedForm, HigherDimensionGaussianFactorizes) {
  const double g1 = kernel::closed_form_kernel(0.7, 0.0, {2, 1});
  EXPECT_NEAR(kernel::closed_form_kernel(0.7, 0.0, {2, 3}), g1 * g1 * g1, 1e-14);
}

TEST(StableKernel, OriginValueMatchesGammaIdentity) {
  const double expected = std::tgamma(1 + 1 / 1.5) / std::numbers::pi;
  EXPECT_NEAR(kernel::stable_kernel(1, 0, {1.5, 1}), expected, 1e-12);
  EXPECT_NEAR(expected, 0.287353, 1e-6);
}

TEST(StableKernel, MatchesIndependentQuadrature) {
  // Direct Gauss-Kronrod on the truncated Fourier integral.
  for (double alpha : {1.2, 1.5, 1.8}) {
    for (double r : {0.3, 1.0, 2.5, 10.0, 30.0}) {
      auto integrand = [&](double rho) { return std::exp(-std::pow(rho, alpha)) * std::cos(rho * r); };
      double err = 0;
      const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                             integrand, 0.0, 40.0, 25, 1e-14, &err) / std::numbers::pi;
      EXPECT_NEAR(kernel::stable_kernel(1, r, {alpha, 1}), ref, 1e-10 * ref) << alpha << " " << r;
    }
  }
}

TEST(StableKernel, GaussianAndCauchyCrossChecks) {
  for (double t : logspace(1e-2, 1e2, 10)) {
    for (double z : linspace(0, 5, 10)) {
      for (double alpha : {1.0, 2.0}) {
        const double r = z * std::pow(t, 1 / alpha);
        const double exact = kernel::closed_form_kernel(t, r, {alpha, 1});
        EXPECT_NEAR(kernel::stable_kernel_1d(t, r, alpha).density, exact, 1e-8 * exact);
      }
    }
  }
}

TEST(StableKernel, FarFieldMatchesCauchy) {
  for (double z : {8.0, 50.0, 1e4}) {
    const double exact = kernel::closed_form_kernel(0.01, 0.01 * z, {1, 1});
    EXPECT_NEAR(kernel::stable_kernel(0.01, 0.01 * z, {1, 1}), exact, 1e-12 * exact);
  }
}

TEST(StableKernel, SelfSimilarity) {
  const double t = 4, r = 1, alpha = 1.2;
  const double s = std::pow(t, -1 / alpha);
  const double p = kernel::stable_kernel(t, r, {alpha, 1});
  EXPECT_NEAR(p, s * kernel::stable_kernel(1, s * r, {alpha, 1}), 1e-8 * p);
}

TEST(StableKernel, RadiallyNonIncreasing) {
  for (double alpha : {1.1, 1.5, 1.9}) {
    double prev = kernel::stable_kernel(1, 0, {alpha, 1});
    for (double r : linspace(0.05, 20, 200)) {
      const double p = kernel::stable_kernel(1, r, {alpha, 1});
      EXPECT_LE(p, prev * (1 + 1e-12)) << alpha << " r=" << r;
      prev = p;
    }
  }
}

TEST(StableKernel, UnitMass) {
  for (double alpha : {1.2, 1.5, 1.8}) {
    // Trapezoid on a graded mesh over [0, 1e3], doubled for the symmetric half.
    std::vector<double> rs = linspace(0, 10, 2001);
    for (double r : logspace(10, 1e3, 400)) if (r > 10) rs.push_back(r);
    double mass = 0;
    double prev_r = rs[0], prev_p = kernel::stable_kernel(1, rs[0], {alpha, 1});
    for (std::size_t i = 1; i < rs.size(); ++i) {
      const double p = kernel::stable_kernel(1, rs[i], {alpha, 1});
      mass += 0.5 * (p + prev_p) * (rs[i] - prev_r);
      prev_r = rs[i];
      prev_p = p;
    }
    // Beyond 1e3 the density is c t r^{-1-alpha}, c = Gamma(1+alpha) sin(pi alpha/2)/pi.
    const double c = std::tgamma(1 + alpha) * std::sin(std::numbers::pi * alpha / 2) / std::numbers::pi;
    const double tail = 2 * c * std::pow(1e3, -alpha) / alpha;
    EXPECT_NEAR(2 * mass + tail, 1.0, 1e-4) << alpha;
  }
}

TEST(StableKernel, Preconditions) {
  EXPECT_THROW(kernel::stable_kernel(0, 1, {1.5, 1}), PreconditionError);
  EXPECT_THROW(kernel::stable_kernel(1, -1, {1.5, 1}), PreconditionError);
  EXPECT_THROW(kernel::stable_kernel(1, 1, {2.5, 1}), PreconditionError);
  EXPECT_THROW(kernel::stable_kernel(1, 1, {1.5, 2}), PreconditionError);
  EXPECT_NO_THROW(kernel::stable_kernel(1, 1, {2, 3}));
}

TEST(Envelope, Examples) {
  auto e = kernel::envelope(1, 0, {1.5, 1});
  EXPECT_DOUBLE_EQ(e.min_form, 1);
  EXPECT_DOUBLE_EQ(e.sum_form, 1);
  e = kernel::envelope(1, 2, {1.5, 1});
  EXPECT_NEAR(e.min_form, std::pow(2, -2.5), 1e-15);
  e = kernel::envelope(1, 1, {1, 1});
  EXPECT_DOUBLE_EQ(e.sum_form, 0.25);
  EXPECT_DOUBLE_EQ(e.min_form, 1);
}

TEST(Envelope, FormRatioBounded) {
  for (int d : {1, 2, 3}) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
      for (double t : logspace(1e-3, 1e3, 13)) {
        for (double r : logspace(1e-3, 1e3, 13)) {
          const auto e = kernel::envelope(t, r, {alpha, d});
          const double ratio = e.min_form / e.sum_form;
          EXPECT_GE(ratio, 1 - 1e-12);
          EXPECT_LE(ratio, std::pow(2.0, d + alpha) * (1 + 1e-12));
        }
      }
    }
  }
}

TEST(EnvelopeConstants, CauchyAnalyticBounds) {
  std::vector<double> ts = logspace(1e-2, 1e2, 15), rs = logspace(1e-3, 1e2, 20);
  rs.insert(rs.begin(), 0.0);
  const auto grid = kernel::tensor_grid(ts, rs);
  const auto c = kernel::estimate_envelope_constants({1, 1}, grid);
  EXPECT_GE(c.c1_hat, 1 / (4 * std::numbers::pi));
  EXPECT_LE(c.c2_hat, 2 / std::numbers::pi);
  EXPECT_TRUE(c.lower_certified);
}

TEST(EnvelopeConstants, SinglePoint) {
  const std::vector<kernel::SamplePoint> grid{{1, 0}};
  const auto c = kernel::estimate_envelope_constants({1.5, 1}, grid);
  EXPECT_DOUBLE_EQ(c.c1_hat, c.c2_hat);
  EXPECT_NEAR(c.c1_hat, kernel::stable_kernel(1, 0, {1.5, 1}), 1e-15);
}

TEST(EnvelopeConstants, GaussianLowerNotCertified) {
  const std::vector<kernel::SamplePoint> grid{{1, 0}, {1, 3}};
  EXPECT_FALSE(kernel::estimate_envelope_constants({2, 1}, grid).lower_certified);
}

TEST(EnvelopeConstants, RefinementStable) {
  for (double alpha : {1.2, 1.5, 1.8}) {
    auto build = [&](std::size_t n) {
      std::vector<double> ts = logspace(1e-2, 1e2, n), rs = logspace(1e-2, 1e2, n);
      rs.insert(rs.begin(), 0.0);
      const auto grid = kernel::tensor_grid(ts, rs);
      return kernel::estimate_envelope_constants({alpha, 1}, grid);
    };
    const auto a = build(13), b = build(25);
    EXPECT_GT(a.c1_hat, 0);
    EXPECT_NEAR(a.c1_hat, b.c1_hat, 0.05 * b.c1_hat);
    EXPECT_NEAR(a.c2_hat, b.c2_hat, 0.05 * b.c2_hat);
  }
}
