#include "fracheat/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "fracheat/errors.hpp"
#include "fracheat/numeric.hpp"
#include "fracheat/quadrature.hpp"

namespace fracheat {

void DichotomyParams::validate() const {
  if (!(q >= 1.0) || !std::isfinite(q)) throw PreconditionError("criteria: need q >= 1");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw PreconditionError("criteria: alpha must lie in (0, 2]");
  if (d < 1) throw PreconditionError("criteria: need d >= 1");
  if (!(tau > 1.0)) throw PreconditionError("criteria: need tau > 1");
  if (!(s_max >= 1e4) || !std::isfinite(s_max)) {
    throw PreconditionError("criteria: horizon s_max must be finite and >= 1e4");
  }
  if (K == 0 || K > 10000) throw PreconditionError("criteria: need 1 <= K <= 10000");
}

const char* to_string(TrendOutcome v) {
  switch (v) {
    case TrendOutcome::finite: return "finite";
    case TrendOutcome::infinite: return "infinite";
    case TrendOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(IntegralOutcome v) {
  switch (v) {
    case IntegralOutcome::convergent: return "convergent";
    case IntegralOutcome::divergent: return "divergent";
    case IntegralOutcome::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::local_existence: return "local_existence";
    case Verdict::non_existence: return "non_existence";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Domain v) { return v == Domain::ball ? "ball" : "whole_space"; }

namespace {

constexpr double kGrowthInfinite = 1.05;
constexpr double kGrowthFlat = 1.01;
constexpr int kPointsPerOctave = 16;

double growth_ratio(double later, double earlier) {
  if (later == earlier) return 1.0;  // includes 0/0
  return later / earlier;
}

// Running sup of g over samples ordered towards the horizon; growth factors
// across the last three decades, which end at the marks.
TrendResult trend(const std::vector<double>& s, const std::vector<double>& g,
                  const std::array<double, 4>& marks, bool increasing_s) {
  TrendResult out;
  std::array<double, 4> at_mark{};
  double running = 0.0;
  std::size_t m = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    while (m < 4 && (increasing_s ? s[j] > marks[m] : s[j] < marks[m])) at_mark[m++] = running;
    const double v = std::isnan(g[j]) ? std::numeric_limits<double>::infinity() : g[j];
    if (v > running) {
      running = v;
      out.s_star = s[j];
    }
  }
  while (m < 4) at_mark[m++] = running;
  out.bound = running;
  for (std::size_t i = 0; i + 1 < 4; ++i) out.decade_growth.push_back(growth_ratio(at_mark[i + 1], at_mark[i]));
  if (std::isinf(running)) {
    out.outcome = TrendOutcome::infinite;
  } else if (std::all_of(out.decade_growth.begin(), out.decade_growth.end(),
                         [](double r) { return r >= kGrowthInfinite; })) {
    out.outcome = TrendOutcome::infinite;
  } else if (std::all_of(out.decade_growth.begin(), out.decade_growth.end(),
                         [](double r) { return r <= kGrowthFlat; })) {
    out.outcome = TrendOutcome::finite;
  } else {
    out.outcome = TrendOutcome::inconclusive;
  }
  return out;
}

double golden_max(const std::function<double(double)>& h, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo), b = std::log(hi);
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = h(std::exp(c)), fd = h(std::exp(d));
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = h(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = h(std::exp(d));
    }
  }
  return std::exp(0.5 * (a + b));
}

}  // namespace

EnvelopeF::EnvelopeF(const GrowthFunction& f, double s_max) : f_(f), s_max_(s_max) {
  if (!(s_max >= 1.0)) throw PreconditionError("envelope F: need s >= 1");
  const auto octaves = std::max(1.0, std::ceil(std::log2(s_max)));
  const auto n = static_cast<std::size_t>(octaves) * kPointsPerOctave + 1;
  std::vector<double> grid = s_max > 1.0 ? logspace(1.0, s_max, n) : std::vector<double>{1.0};
  auto h = [this](double t) { return f_(t) / t; };
  std::vector<double> extra;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double a = h(grid[i - 1]), b = h(grid[i]), c = h(grid[i + 1]);
    if (b >= a && b >= c && (b > a || b > c)) extra.push_back(golden_max(h, grid[i - 1], grid[i + 1]));
  }
  for (double k : f.knots()) {
    if (k > 1.0 && k < s_max) extra.push_back(k);
  }
  grid.insert(grid.end(), extra.begin(), extra.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  knots_ = std::move(grid);
  double running = 0.0;
  for (double t : knots_) {
    running = std::max(running, h(t));
    running_.push_back(running);
  }
}

double EnvelopeF::operator()(double s) const {
  if (!(s >= 1.0)) throw PreconditionError("envelope F: need s >= 1");
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  const auto j = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::max(running_[j], f_(s) / s);
}

double envelope_F(const GrowthFunction& f, double s) {
  if (!(s >= 1.0)) throw PreconditionError("envelope F: need s >= 1");
  return EnvelopeF(f, s)(s);
}

TrendResult limsup_power_test(const GrowthFunction& f, const DichotomyParams& params) {
  params.validate();
  const double p = params.p_crit();
  std::vector<double> s, g;
  for (double x = 1.0; x <= params.s_max; x *= 2.0) {
    s.push_back(x);
    g.push_back(f(x) * std::pow(x, -p));
  }
  const double top = params.s_max;
  return trend(s, g, {top / 1e3, top / 1e2, top / 1e1, top}, true);
}

TrendResult small_s_test(const GrowthFunction& f) {
  constexpr double floor = 1e-12;
  std::vector<double> s, g;
  for (double x = 1.0; x >= floor; x *= 0.5) {
    s.push_back(x);
    g.push_back(f(x) / x);
  }
  return trend(s, g, {floor * 1e3, floor * 1e2, floor * 1e1, floor}, false);
}

OsgoodResult osgood_integral_test(const GrowthFunction& f, const DichotomyParams& params) {
  params.validate();
  const double p = params.p_l1();
  const EnvelopeF big_f(f, params.s_max);
  const auto& knots = big_f.knots();
  OsgoodResult out;
  quad::Options opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = 1e-11;
  auto integrand = [&](double s) { return std::pow(s, -p) * big_f(s); };
  for (int k = 0; std::ldexp(1.0, k + 1) <= params.s_max; ++k) {
    const double a = std::ldexp(1.0, k), b = std::ldexp(1.0, k + 1);
    std::vector<double> breaks{a};
    for (auto it = std::upper_bound(knots.begin(), knots.end(), a);
         it != knots.end() && *it < b; ++it) {
      breaks.push_back(*it);
    }
    breaks.push_back(b);
    const auto r = quad::integrate(integrand, std::span<const double>(breaks), opts);
    out.block_sums.push_back(r.value);
  }
  const auto& bs = out.block_sums;
  double total = 0.0;
  for (double v : bs) total += v;
  out.value = total;
  const std::size_t n = bs.size();
  if (n < 6) throw PreconditionError("osgood: horizon too short for five block ratios");
  const std::size_t first = n - 5;
  if (std::all_of(bs.begin() + static_cast<long>(first), bs.end(), [](double v) { return v == 0.0; })) {
    out.outcome = IntegralOutcome::convergent;
    return out;
  }
  bool non_decreasing = true, decreasing = true;
  out.last_ratio = 0.0;
  for (std::size_t i = first; i + 1 < n; ++i) {
    non_decreasing = non_decreasing && bs[i + 1] >= bs[i] * (1.0 - 1e-9);
    decreasing = decreasing && bs[i + 1] < bs[i];
    out.last_ratio = std::max(out.last_ratio, bs[i + 1] / bs[i]);
  }
  const double k_last = static_cast<double>(n - 1);
  const double k_first = static_cast<double>(first);
  out.power_exponent = -std::log(bs[n - 1] / bs[first]) / std::log(k_last / k_first);
  if (non_decreasing) {
    out.outcome = IntegralOutcome::divergent;
    out.value = std::numeric_limits<double>::infinity();
  } else if (out.last_ratio <= 0.95) {
    out.outcome = IntegralOutcome::convergent;
    out.tail = bs.back() * out.last_ratio / (1.0 - out.last_ratio);
  } else if (decreasing && out.power_exponent >= 1.5) {
    out.outcome = IntegralOutcome::convergent;
    out.tail = bs.back() * k_last / (out.power_exponent - 1.0);
  } else {
    out.outcome = IntegralOutcome::inconclusive;
  }
  if (out.outcome == IntegralOutcome::convergent) out.value = total + out.tail;
  return out;
}

SequenceWitness geometric_sequence_witness(const GrowthFunction& f, const DichotomyParams& params) {
  params.validate();
  const double p = params.p_l1();
  const double step = std::pow(params.tau, 1.0 / 8.0);
  auto lattice = [&](long j) { return std::pow(step, static_cast<double>(j)); };
  auto g = [&](double s) { return f(s) * std::pow(s, -p); };
  // First maximizer of g over lattice indices [lo, hi]; ties within roundoff
  // go to the earliest point.
  auto pick = [&](long lo, long hi) {
    long best = lo;
    double best_v = g(lattice(lo));
    for (long j = lo + 1; j <= hi; ++j) {
      const double v = g(lattice(j));
      if (v > best_v * (1.0 + 1e-12)) {
        best = j;
        best_v = v;
      }
    }
    return best;
  };
  SequenceWitness out;
  long j = pick(0, 8);
  double sum = 0.0;
  while (out.s.size() < params.K && lattice(j) <= params.s_max) {
    const double s = lattice(j);
    const double term = g(s);
    sum += term;
    out.s.push_back(s);
    out.terms.push_back(term);
    out.partial_sums.push_back(sum);
    j = pick(j + 8, j + 16);
  }
  std::array<double, 4> marks{params.s_max / 1e3, params.s_max / 1e2, params.s_max / 1e1,
                              params.s_max};
  std::array<double, 4> at_mark{};
  for (std::size_t m = 0; m < 4; ++m) {
    double v = 0.0;
    for (std::size_t k = 0; k < out.s.size() && out.s[k] <= marks[m]; ++k) v = out.partial_sums[k];
    at_mark[m] = v;
  }
  for (std::size_t i = 0; i + 1 < 4; ++i) out.decade_growth.push_back(growth_ratio(at_mark[i + 1], at_mark[i]));
  out.found = std::isinf(sum) || std::all_of(out.decade_growth.begin(), out.decade_growth.end(),
                                             [](double r) { return r >= kGrowthInfinite; });
  return out;
}

EquivalenceReport equivalence_check(const GrowthFunction& f, const DichotomyParams& params) {
  EquivalenceReport out;
  out.integral = osgood_integral_test(f, params);
  out.witness = geometric_sequence_witness(f, params);
  const bool divergent = out.integral.outcome == IntegralOutcome::divergent;
  if (out.integral.outcome == IntegralOutcome::inconclusive) {
    out.note = "integral test inconclusive on the horizon";
  } else if (divergent != out.witness.found) {
    out.note = std::string("disagreement: integral ") + to_string(out.integral.outcome) +
               ", sequence witness " + (out.witness.found ? "found" : "absent") +
               " (horizon effect)";
  } else {
    out.pass = true;
    out.note = divergent ? "divergent integral and divergent sequence" : "convergent integral, no sequence";
  }
  return out;
}

DichotomyVerdict classify(const GrowthFunction& f, const DichotomyParams& params, Domain domain) {
  if (!(params.alpha > 1.0 && params.alpha <= 2.0)) {
    throw PreconditionError("classify: alpha outside theorem hypotheses (need 1 < alpha <= 2)");
  }
  params.validate();
  DichotomyVerdict out;
  // Each condition: +1 holds, -1 fails, 0 undecided.
  std::vector<int> conditions;
  if (params.q > 1.0) {
    out.limsup = limsup_power_test(f, params);
    conditions.push_back(out.limsup->outcome == TrendOutcome::finite     ? 1
                         : out.limsup->outcome == TrendOutcome::infinite ? -1
                                                                          : 0);
  } else {
    out.integral = osgood_integral_test(f, params);
    out.sequence = geometric_sequence_witness(f, params);
    conditions.push_back(out.integral->outcome == IntegralOutcome::convergent  ? 1
                         : out.integral->outcome == IntegralOutcome::divergent ? -1
                                                                               : 0);
    if ((out.integral->outcome == IntegralOutcome::divergent) != out.sequence->found) {
      out.notes.push_back("integral test and sequence witness disagree on the horizon");
    }
  }
  if (domain == Domain::whole_space) {
    out.small_s = small_s_test(f);
    conditions.push_back(out.small_s->outcome == TrendOutcome::finite     ? 1
                         : out.small_s->outcome == TrendOutcome::infinite ? -1
                                                                           : 0);
    if (out.small_s->outcome == TrendOutcome::infinite) out.notes.push_back("f(s)/s unbounded near 0");
  }
  if (std::find(conditions.begin(), conditions.end(), -1) != conditions.end()) {
    out.verdict = Verdict::non_existence;
  } else if (std::find(conditions.begin(), conditions.end(), 0) != conditions.end()) {
    out.verdict = Verdict::inconclusive;
  } else {
    out.verdict = Verdict::local_existence;
  }
  return out;
}

}  // namespace fracheat
