#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracheat/criteria.hpp"
#include "fracheat/errors.hpp"

using namespace fracheat;

namespace {

DichotomyParams params(double q, double alpha = 1.5) {
  DichotomyParams p;
  p.q = q;
  p.alpha = alpha;
  return p;
}

GrowthFunction pl(double p, double gamma = 0.0, double a = 1.0) { return GrowthFunction::power_log({{a, p, gamma}}); }

}  // namespace

TEST(EnvelopeF, Examples) {
  for (double s : {1.0, 2.0, 17.5, 1e6}) {
    EXPECT_NEAR(envelope_F(pl(2), s), s, 1e-9 * s);
    EXPECT_NEAR(envelope_F(pl(0), s), 1.0, 1e-12);
    EXPECT_NEAR(envelope_F(pl(1, -1), s), 1 / (1 + std::log(2.0)), 1e-9);
  }
}

TEST(EnvelopeF, MonotoneMajorant) {
  const auto f = GrowthFunction::parse("table:0/0,1/3,2/3.2,5/40,6/41,50/60,1000/1e5");
  const EnvelopeF F(f, 1e8);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, std::log(1e7));
  for (int i = 0; i < 200; ++i) {
    double t = std::exp(u(rng)), s = std::exp(u(rng));
    if (t > s) std::swap(t, s);
    EXPECT_GE(F(s) * (1 + 1e-12), f(t) / t);
    EXPECT_GE(F(s) * (1 + 1e-12), F(t));
  }
}

TEST(LimsupTest, PowerExamples) {
  const auto sub = limsup_power_test(pl(3), params(2));
  EXPECT_EQ(sub.outcome, TrendOutcome::finite);
  EXPECT_NEAR(sub.bound, 1.0, 1e-9);
  EXPECT_LE(sub.s_star, 1.0 + 1e-12);
  EXPECT_EQ(limsup_power_test(pl(5), params(2)).outcome, TrendOutcome::infinite);
  const auto crit = limsup_power_test(pl(4), params(2));
  EXPECT_EQ(crit.outcome, TrendOutcome::finite);
  EXPECT_NEAR(crit.bound, 1.0, 1e-9);
}

TEST(OsgoodTest, Examples) {
  EXPECT_EQ(osgood_integral_test(pl(2.5), params(1)).outcome, IntegralOutcome::divergent);
  EXPECT_EQ(osgood_integral_test(pl(2.5, -2), params(1)).outcome, IntegralOutcome::convergent);
  const auto one = osgood_integral_test(pl(0), params(1));
  EXPECT_EQ(one.outcome, IntegralOutcome::convergent);
  EXPECT_NEAR(one.value, 2.0 / 3.0, 1e-6);
  // F(s) = s^{0.2}: the integral of s^{-2.3} is 1/1.3.
  const auto mild = osgood_integral_test(pl(1.2), params(1));
  EXPECT_EQ(mild.outcome, IntegralOutcome::convergent);
  EXPECT_NEAR(mild.value, 1 / 1.3, 1e-6);
}

TEST(SequenceWitness, Examples) {
  const auto crit = geometric_sequence_witness(pl(2.5), params(1));
  ASSERT_TRUE(crit.found);
  for (double term : crit.terms) EXPECT_NEAR(term, 1.0, 1e-12);
  for (std::size_t k = 0; k < crit.partial_sums.size(); ++k) {
    EXPECT_NEAR(crit.partial_sums[k], k + 1.0, 1e-9 * (k + 1));
  }
  for (std::size_t k = 1; k < crit.s.size(); ++k) EXPECT_GE(crit.s[k], 2.0 * crit.s[k - 1] * (1 - 1e-12));
  EXPECT_FALSE(geometric_sequence_witness(pl(1), params(1)).found);
  EXPECT_FALSE(geometric_sequence_witness(pl(0), params(1)).found);
}

TEST(Equivalence, Examples) {
  EXPECT_TRUE(equivalence_check(pl(2.5), params(1)).pass);
  EXPECT_TRUE(equivalence_check(pl(2.5, -2), params(1)).pass);
  EXPECT_TRUE(equivalence_check(pl(0), params(1)).pass);
}

TEST(SmallS, Examples) {
  EXPECT_EQ(small_s_test(pl(2)).outcome, TrendOutcome::finite);
  EXPECT_EQ(small_s_test(pl(0.5)).outcome, TrendOutcome::infinite);
  const auto lin = small_s_test(pl(1));
  EXPECT_EQ(lin.outcome, TrendOutcome::finite);
  EXPECT_NEAR(lin.bound, 1.0, 1e-12);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(pl(3), params(2), Domain::ball).verdict, Verdict::local_existence);
  EXPECT_EQ(classify(pl(2.5), params(1), Domain::ball).verdict, Verdict::non_existence);
  const auto ws = classify(GrowthFunction::parse("powerlog:1,0.5,0+powerlog:1,2,0"), params(2), Domain::whole_space);
  EXPECT_EQ(ws.verdict, Verdict::non_existence);
  ASSERT_TRUE(ws.small_s.has_value());
  EXPECT_EQ(ws.small_s->outcome, TrendOutcome::infinite);
}

TEST(Classify, AlphaOutsideHypotheses) {
  try {
    classify(pl(3), params(2, 0.5), Domain::ball);
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("outside theorem hypotheses"), std::string::npos);
  }
}

TEST(Classify, PowerSweepMatchesClosedForm) {
  for (double alpha : {1.2, 1.4, 1.6, 1.8, 2.0}) {
    for (double q : {1.0, 2.0, 3.0}) {
      for (double p : {1.5, 3.0, 4.2, 5.0, 8.0}) {
        const double pc = 1 + alpha * q;
        const bool exists = q > 1 ? p <= pc + 1e-12 : p < pc - 1e-12;
        EXPECT_EQ(classify(pl(p), params(q, alpha), Domain::ball).verdict,
                  exists ? Verdict::local_existence : Verdict::non_existence)
            << "alpha=" << alpha << " q=" << q << " p=" << p;
      }
    }
  }
}

TEST(Classify, ScalingInvariant) {
  for (const char* spec : {"powerlog:1,3,0", "powerlog:1,5,0", "powerlog:1,2.5,-2", "powerlog:1,2.5,1",
                           "powerlog:1,0.5,0+powerlog:1,2,0"}) {
    const auto f = GrowthFunction::parse(spec);
    for (double q : {1.0, 2.0}) {
      for (Domain dom : {Domain::ball, Domain::whole_space}) {
        const auto base = classify(f, params(q), dom).verdict;
        for (double c : {0.1, 10.0}) {
          EXPECT_EQ(classify(f.scaled(c), params(q), dom).verdict, base) << spec << " c=" << c;
        }
      }
    }
  }
}

TEST(Equivalence, Corpus) {
  const double corpus[12][3] = {{1, 0, 0}, {1, 1, 0},    {1, 2, 0},   {1, 2.5, 0}, {1, 3, 0},   {1, 2.5, -2},
                                {1, 2.5, 1}, {1, 2, 1}, {1, 0.5, 0}, {1, 1, -1},  {1, 4, 0}, {1, 2.5, -3}};
  for (const auto& c : corpus) {
    const auto r = equivalence_check(pl(c[1], c[2], c[0]), params(1));
    EXPECT_TRUE(r.pass) << c[1] << " " << c[2] << ": " << r.note;
  }
}

TEST(Params, Validation) {
  auto p = params(1);
  p.s_max = 100;
  EXPECT_THROW(p.validate(), PreconditionError);
  p = params(0.5);
  EXPECT_THROW(p.validate(), PreconditionError);
  p = params(1);
  p.tau = 1;
  EXPECT_THROW(p.validate(), PreconditionError);
  EXPECT_DOUBLE_EQ(params(2).p_crit(), 4.0);
  EXPECT_DOUBLE_EQ(params(2).p_l1(), 2.5);
}
