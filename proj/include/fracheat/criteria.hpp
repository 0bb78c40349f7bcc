#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fracheat/growth.hpp"

namespace fracheat {

struct DichotomyParams {
  double q = 1.0;
  double alpha = 1.5;
  int d = 1;
  double tau = 2.0;
  double s_max = 1e12;
  std::size_t K = 10000;

  /// 1 + αq/d
  double p_crit() const { return 1.0 + alpha * q / d; }
  /// 1 + α/d, the exponent of the L¹ integral test and the sequence witness.
  double p_l1() const { return 1.0 + alpha / d; }
  void validate() const;
};

enum class TrendOutcome { finite, infinite, inconclusive };
enum class IntegralOutcome { convergent, divergent, inconclusive };
enum class Verdict { local_existence, non_existence, inconclusive };
enum class Domain { ball, whole_space };

const char* to_string(TrendOutcome v);
const char* to_string(IntegralOutcome v);
const char* to_string(Verdict v);
const char* to_string(Domain v);

/// Running supremum of a ratio sampled on a dyadic grid, with its growth
/// factor across each of the last three decades of the horizon.
struct TrendResult {
  TrendOutcome outcome = TrendOutcome::inconclusive;
  double bound = 0.0;   ///< observed supremum
  double s_star = 0.0;  ///< first point attaining it
  std::vector<double> decade_growth;
};

struct OsgoodResult {
  IntegralOutcome outcome = IntegralOutcome::inconclusive;
  double value = 0.0;  ///< Σ blocks + tail (meaningful when convergent)
  double tail = 0.0;
  std::vector<double> block_sums;  ///< ∫ over [2^k, 2^{k+1}]
  double last_ratio = 0.0;         ///< max ratio over the last five blocks
  double power_exponent = 0.0;     ///< β in b_k ~ k^{-β}
};

struct SequenceWitness {
  bool found = false;
  std::vector<double> s;
  std::vector<double> terms;  ///< s_k^{-p} f(s_k)
  std::vector<double> partial_sums;
  std::vector<double> decade_growth;
};

struct EquivalenceReport {
  bool pass = false;
  OsgoodResult integral;
  SequenceWitness witness;
  std::string note;
};

struct DichotomyVerdict {
  Verdict verdict = Verdict::inconclusive;
  std::optional<TrendResult> limsup;
  std::optional<OsgoodResult> integral;
  std::optional<SequenceWitness> sequence;
  std::optional<TrendResult> small_s;
  std::vector<std::string> notes;
};

/// F(s) = sup_{1 <= t <= s} f(t)/t, tabulated once up to s_max.
class EnvelopeF {
 public:
  EnvelopeF(const GrowthFunction& f, double s_max);
  double operator()(double s) const;
  double s_max() const { return s_max_; }
  /// Tabulation points (log grid, table knots and refined local maxima).
  const std::vector<double>& knots() const { return knots_; }

 private:
  GrowthFunction f_;
  double s_max_;
  std::vector<double> knots_;
  std::vector<double> running_;
};

/// Single evaluation of F(s); s >= 1.
double envelope_F(const GrowthFunction& f, double s);

TrendResult limsup_power_test(const GrowthFunction& f, const DichotomyParams& params);
OsgoodResult osgood_integral_test(const GrowthFunction& f, const DichotomyParams& params);
SequenceWitness geometric_sequence_witness(const GrowthFunction& f, const DichotomyParams& params);
EquivalenceReport equivalence_check(const GrowthFunction& f, const DichotomyParams& params);
TrendResult small_s_test(const GrowthFunction& f);

/// Throws PreconditionError ("outside theorem hypotheses") unless α ∈ (1, 2].
DichotomyVerdict classify(const GrowthFunction& f, const DichotomyParams& params, Domain domain);

}  // namespace fracheat
