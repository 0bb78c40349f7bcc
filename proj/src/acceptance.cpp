#include "fracheat/acceptance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "fracheat/construct.hpp"
#include "fracheat/criteria.hpp"
#include "fracheat/dirichlet.hpp"
#include "fracheat/kernel.hpp"
#include "fracheat/mild_solver.hpp"
#include "fracheat/numeric.hpp"
#include "fracheat/periodic.hpp"

namespace fracheat {

namespace {

using Detail = std::ostringstream;

std::string fmt(double v) { return format_double(v); }

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---------------------------------------------------------------- 1
CriterionResult kernel_oracles() {
  CriterionResult res{1, "kernel oracles", true, ""};
  const auto ts = logspace(1e-2, 1e2, 10);
  const auto zs = linspace(0.0, 5.0, 10);
  double oracle_err = 0.0;
  for (double alpha : {1.0, 2.0}) {
    for (double t : ts) {
      for (double z : zs) {
        const double r = z * std::pow(t, 1.0 / alpha);
        const double exact = kernel::closed_form_kernel(t, r, {alpha, 1});
        oracle_err = std::max(oracle_err, rel_err(kernel::stable_kernel_1d(t, r, alpha).density, exact));
      }
    }
  }
  double selfsim = 0.0;
  double ratio_lo = std::numeric_limits<double>::infinity(), ratio_hi = 0.0;
  bool ratio_ok = true;
  const auto rs = linspace(0.0, 5.0, 10);
  for (double alpha : {1.2, 1.5, 1.8}) {
    for (double t : ts) {
      for (double r : rs) {
        const double p = kernel::stable_kernel_1d(t, r, alpha).density;
        const double scale = std::pow(t, -1.0 / alpha);
        const double q = scale * kernel::stable_kernel_1d(1.0, r * scale, alpha).density;
        selfsim = std::max(selfsim, std::abs(p - q) / p);
        const auto env = kernel::envelope(t, r, {alpha, 1});
        const double ratio = env.min_form / env.sum_form;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
        ratio_ok = ratio_ok && ratio >= 1.0 - 1e-12 && ratio <= std::pow(2.0, 1.0 + alpha) * (1 + 1e-12);
      }
    }
  }
  res.passed = oracle_err <= 1e-8 && selfsim <= 1e-8 && ratio_ok;
  Detail d;
  d << "closed-form rel err " << fmt(oracle_err) << " (<= 1e-8), self-similarity " << fmt(selfsim)
    << " (<= 1e-8), min/sum form ratio in [" << fmt(ratio_lo) << ", " << fmt(ratio_hi) << "]";
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 2
kernel::EnvelopeConstants constants_on(double alpha, std::size_t z_count) {
  std::vector<kernel::SamplePoint> grid;
  for (double t : {0.1, 1.0, 10.0}) {
    grid.push_back({t, 0.0});
    for (double z : logspace(1e-2, 1e2, z_count)) grid.push_back({t, z * std::pow(t, 1.0 / alpha)});
  }
  return kernel::estimate_envelope_constants({alpha, 1}, grid);
}

CriterionResult two_sided_bounds() {
  CriterionResult res{2, "two-sided kernel bounds", true, ""};
  Detail d;
  for (double alpha : {1.2, 1.5, 1.8}) {
    const auto coarse = constants_on(alpha, 41);
    const auto fine = constants_on(alpha, 81);
    const double d1 = rel_err(fine.c1_hat, coarse.c1_hat);
    const double d2 = rel_err(fine.c2_hat, coarse.c2_hat);
    const bool ok = coarse.c1_hat > 0.0 && std::isfinite(coarse.c2_hat) && d1 <= 0.05 && d2 <= 0.05;
    res.passed = res.passed && ok;
    d << "alpha=" << fmt(alpha) << " c1=" << fmt(fine.c1_hat) << " c2=" << fmt(fine.c2_hat)
      << " refinement shift " << fmt(std::max(d1, d2)) << "; ";
  }
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 3
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

CriterionResult dirichlet_operator(const AcceptanceOptions& options) {
  CriterionResult res{3, "Dirichlet operator", true, ""};
  const auto lap = assemble(Grid1D::dirichlet(1.0, 99), 2.0);
  const double exact = std::pow(std::numbers::pi / 2.0, 2);
  const double eig_err = rel_err(lap.lambda1(), exact);

  const double alpha = 1.8;
  const auto g = Grid1D::dirichlet(1.0, 800);
  const auto op = assemble(g, alpha);
  const Field w = sample(g, [&](double x) { return std::pow(1.0 - x * x, alpha / 2.0); });
  const Eigen::VectorXd aw =
      op.matrix() * Eigen::Map<const Eigen::VectorXd>(w.values().data(), static_cast<Eigen::Index>(g.size()));
  const double K = std::pow(2.0, alpha) * std::tgamma(alpha / 2.0 + 1.0) *
                   std::tgamma((1.0 + alpha) / 2.0) / std::tgamma(0.5);
  double dyda = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.node(i)) < 0.5) dyda = std::max(dyda, std::abs(aw[static_cast<Eigen::Index>(i)] + K) / K);
  }

  const auto pos_grid = Grid1D::dirichlet(1.0, 199);
  const auto pos_op = assemble(pos_grid, 1.5);
  std::mt19937_64 rng(options.seed);
  double min_value = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 100; ++trial) {
    Field u(pos_grid);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = uniform01(rng) < 0.05 ? uniform01(rng) : 0.0;
    for (double t : {1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
      // Raw spectral evaluation, before any clamping.
      const Field s = pos_op.apply_function([t](double l) { return std::exp(l * t); }, u);
      min_value = std::min(min_value, s.min_value());
    }
  }
  res.passed = eig_err <= 0.005 && dyda <= 0.02 && min_value >= -1e-12;
  Detail d;
  d << "alpha=2 lambda1 " << fmt(lap.lambda1()) << " rel err " << fmt(eig_err)
    << " (<= 0.005); Dyda interior err " << fmt(dyda) << " (<= 0.02); positivity min "
    << fmt(min_value) << " (>= -1e-12)";
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 4
struct LowerBounds {
  double c = 0.0, mu = 0.0, nu = 0.0;
};

LowerBounds lower_bounds(const DirichletOperator& op, double r) {
  const auto times = node_aligned_times(op.grid(), op.alpha(), r / 10.0, r, 12);
  return {verify_indicator_lower_bound(op, r, r, times).c_hat,
          verify_mass_lower_bound(op, r, r, times).mu_hat,
          verify_uniform_lower_bound(op, r, r, times).c_hat};
}

double spread(const std::vector<double>& v) {
  return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end()) - 1.0;
}

CriterionResult lemma_constants() {
  CriterionResult res{4, "lower-bound constants", true, ""};
  const std::array<double, 3> radii{0.05, 0.1, 0.2};
  Detail d;
  for (double alpha : {1.2, 1.5, 1.8}) {
    std::array<std::array<LowerBounds, 3>, 2> lb;
    const std::array<std::size_t, 2> sizes{399, 799};
    for (std::size_t s = 0; s < 2; ++s) {
      const auto op = assemble(Grid1D::dirichlet(1.0, sizes[s]), alpha);
      for (std::size_t j = 0; j < 3; ++j) lb[s][j] = lower_bounds(op, radii[j]);
    }
    double worst_r = 0.0, worst_n = 0.0;
    bool positive = true;
    for (std::size_t s = 0; s < 2; ++s) {
      for (auto pick : {&LowerBounds::c, &LowerBounds::mu, &LowerBounds::nu}) {
        std::vector<double> v;
        for (const auto& b : lb[s]) {
          v.push_back(b.*pick);
          positive = positive && b.*pick > 0.0;
        }
        worst_r = std::max(worst_r, spread(v));
      }
    }
    for (std::size_t j = 0; j < 3; ++j) {
      for (auto pick : {&LowerBounds::c, &LowerBounds::mu, &LowerBounds::nu}) {
        worst_n = std::max(worst_n, rel_err(lb[1][j].*pick, lb[0][j].*pick));
      }
    }
    res.passed = res.passed && positive && worst_r <= 0.15 && worst_n <= 0.10;
    d << "alpha=" << fmt(alpha) << " c=" << fmt(lb[1][1].c) << " mu=" << fmt(lb[1][1].mu)
      << " nu=" << fmt(lb[1][1].nu) << " r-spread " << fmt(worst_r) << " refinement "
      << fmt(worst_n) << "; ";
  }
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 5
CriterionResult smoothing() {
  CriterionResult res{5, "smoothing estimate", true, ""};
  Detail d;
  for (double alpha : {1.5, 2.0}) {
    const auto op = assemble(Grid1D::dirichlet(1.0, 799), alpha);
    const double h = op.grid().spacing();
    const auto times = logspace(std::pow(10.0 * h, alpha), 1.0, 16);
    const auto fit = verify_smoothing(op, times);
    const double target = -1.0 / alpha;
    const double exp_err = std::abs(fit.fitted_exponent - target) / std::abs(target);
    bool ok = exp_err <= 0.10;
    d << "alpha=" << fmt(alpha) << " exponent " << fmt(fit.fitted_exponent) << " rel err "
      << fmt(exp_err);
    if (alpha == 2.0) {
      const double bound = 1.0 / std::sqrt(4.0 * std::numbers::pi);
      double lattice_excess = 0.0;
      bool pointwise = true;
      for (std::size_t i = 0; i < fit.times.size(); ++i) {
        const double t = fit.times[i];
        const double scaled = std::sqrt(4.0 * std::numbers::pi * t) * fit.sup_kernel[i];
        lattice_excess = std::max(lattice_excess, scaled - 1.0);
        pointwise = pointwise && scaled <= 1.0 + h * h / (8.0 * t);
      }
      ok = ok && fit.c_smooth <= bound && pointwise;
      d << ", C " << fmt(fit.c_smooth) << " <= " << fmt(bound) << ", max sqrt(4 pi t) M(t) - 1 = "
        << fmt(lattice_excess) << " (lattice allowance h^2/8t)";
    }
    d << "; ";
    res.passed = res.passed && ok;
  }
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 6
double relative_l2(const Field& a, const Field& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

CriterionResult solver_oracle() {
  CriterionResult res{6, "exponential Euler oracle", true, ""};
  const auto g = Grid1D::dirichlet(1.0, 99);
  const auto op = assemble(g, 2.0);
  const Field u0 = sample(g, [](double x) { return std::pow(1.0 - x * x, 2); });
  const double c = 1.0, T = 0.5;
  const Field exact = std::exp(c * T) * op.semigroup(T, u0);
  auto linear_error = [&](double dt) {
    NonlinearProblem pr(op, GrowthFunction::power(1.0, c), u0, 2.0, T, dt);
    return relative_l2(*solve(pr).final_field, exact);
  };
  const double e1 = linear_error(1e-3), e2 = linear_error(5e-4);
  const double ratio = e1 / e2;

  const double dt = 1e-3;
  NonlinearProblem forced(op, GrowthFunction::power(0.0), Field(g), 2.0, T, dt);
  const Field u_forced = *solve(forced).final_field;
  const Field ones(g, std::vector<double>(g.size(), 1.0));
  const Field duhamel = op.apply_function(
      [T](double l) { return l == 0.0 ? T : std::expm1(l * T) / l; }, ones);
  const double e_forced = relative_l2(u_forced, duhamel);

  res.passed = e1 <= 1e-2 && ratio >= 1.6 && ratio <= 2.4 && e_forced <= dt;
  Detail d;
  d << "f=u: rel L2 err " << fmt(e1) << " at dt=1e-3, halving ratio " << fmt(ratio)
    << "; f=1: rel err " << fmt(e_forced);
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 7
struct PicardCase {
  std::string label;
  std::function<std::unique_ptr<SpectralEngine>()> engine;
  std::string f;
  std::function<double(double)> u0;
  double T;
};

CriterionResult monotone_iteration() {
  CriterionResult res{7, "monotone iteration", true, ""};
  auto dir = [](double alpha) {
    return [alpha] { return std::make_unique<DirichletOperator>(Grid1D::dirichlet(1.0, 99), alpha); };
  };
  auto per = [](double alpha) {
    return [alpha] { return std::make_unique<PeriodicOperator>(Grid1D::periodic(4.0, 128), alpha); };
  };
  auto ind = [](double a, double r) { return [a, r](double x) { return std::abs(x) <= r ? a : 0.0; }; };
  auto bump = [](double a) { return [a](double x) { return a * std::pow(std::max(0.0, 1.0 - x * x), 2); }; };
  auto gauss = [](double a) { return [a](double x) { return a * std::exp(-x * x); }; };
  const std::vector<PicardCase> corpus = {
      {"zero", dir(1.5), "zero", ind(1.0, 0.3), 0.1},
      {"linear", dir(1.5), "powerlog:1,1,0", ind(1.0, 0.3), 0.2},
      {"square", dir(1.5), "powerlog:1,2,0", bump(1.0), 0.1},
      {"square-heat", dir(2.0), "powerlog:1,2,0", bump(1.0), 0.1},
      {"constant", dir(1.2), "powerlog:1,0,0", [](double) { return 0.0; }, 0.1},
      {"powerlog", dir(1.8), "powerlog:1,1.5,1", bump(2.0), 0.05},
      {"cubic", dir(1.5), "powerlog:1,3,0", ind(0.5, 0.3), 0.1},
      {"periodic-mixed", per(1.5), "powerlog:1,1,0+powerlog:1,2,0", gauss(0.5), 0.2},
      {"periodic-heat", per(2.0), "powerlog:1,2,0", gauss(1.0), 0.1},
      {"large-data", dir(1.5), "powerlog:1,2,0", ind(50.0, 0.3), 0.1},
  };
  Detail d;
  d << "statuses:";
  for (const auto& pc : corpus) {
    const auto engine = pc.engine();
    NonlinearProblem pr(*engine, GrowthFunction::parse(pc.f), sample(engine->grid(), pc.u0), 2.0,
                        pc.T, 1e-3);
    try {
      const auto out = picard_minimal_solution(pr);
      d << ' ' << pc.label << '=' << to_string(out.trajectory.status) << '/' << out.iterations;
    } catch (const NumericalError& e) {
      res.passed = false;
      d << ' ' << pc.label << "=violation(" << e.what() << ")";
    }
  }

  // Supersolution B S(t)u0 + 1 for a subcritical f on the ball.
  {
    const auto op = assemble(Grid1D::dirichlet(1.0, 199), 1.5);
    const auto& g = op.grid();
    const Field u0 = sample(g, [](double x) { return std::pow(std::max(0.0, 1.0 - 4.0 * x * x), 2); });
    const auto f = GrowthFunction::power(2.0);
    NonlinearProblem pr(op, f, u0, 1.0, 0.1, 1e-3);
    const auto times = pr.time_grid();
    const Field one(g, std::vector<double>(g.size(), 1.0));
    std::vector<Field> v;
    for (double t : times) v.push_back(2.0 * op.semigroup(t, u0) + one);
    const auto rep = verify_supersolution(op, f, times, v, u0);
    const auto pc = picard_minimal_solution(pr);
    double excess = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < times.size(); ++n) {
      for (std::size_t i = 0; i < g.size(); ++i) excess = std::max(excess, pc.trajectory.states[n][i] - v[n][i]);
    }
    const bool ok = rep.is_supersolution && pc.trajectory.status == TrajectoryStatus::completed &&
                    excess <= 1e-10;
    res.passed = res.passed && ok;
    d << "; ball candidate: supersolution=" << rep.is_supersolution << " picard "
      << to_string(pc.trajectory.status) << " max(u-v)=" << fmt(excess);
  }
  // Supersolution e^{2Ct} u(t) on the torus, u solving the 2C s^p problem.
  {
    const auto op = assemble_periodic(256, 4.0, 1.5);
    const auto& g = op.grid();
    const double C = 1.0, p = 2.0;
    const double T = 0.2;  // below ln 2 / (2C(p-1))
    const Field u0 = sample(g, [](double x) { return 0.5 * std::exp(-x * x); });
    NonlinearProblem lin(op, GrowthFunction::power(p, 2.0 * C), u0, 2.0, T, 1e-3);
    const auto times = lin.time_grid();
    const auto base = picard_minimal_solution(lin);
    std::vector<Field> v;
    for (std::size_t n = 0; n < times.size(); ++n) v.push_back(std::exp(2.0 * C * times[n]) * base.trajectory.states[n]);
    const auto f = GrowthFunction::power_log({{C, 1.0, 0.0}, {C, p, 0.0}});
    const auto rep = verify_supersolution(op, f, times, v, u0);
    NonlinearProblem pr(op, f, u0, 2.0, T, 1e-3);
    const auto pc = picard_minimal_solution(pr);
    double excess = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < times.size(); ++n) {
      for (std::size_t i = 0; i < g.size(); ++i) excess = std::max(excess, pc.trajectory.states[n][i] - v[n][i]);
    }
    const bool ok = base.trajectory.status == TrajectoryStatus::completed && rep.is_supersolution &&
                    pc.trajectory.status == TrajectoryStatus::completed && excess <= 1e-10;
    res.passed = res.passed && ok;
    d << "; torus candidate: supersolution=" << rep.is_supersolution << " picard "
      << to_string(pc.trajectory.status) << " max(u-v)=" << fmt(excess);
  }
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 8
CriterionResult classifier() {
  CriterionResult res{8, "classifier exactness", true, ""};
  int disagreements = 0, cases = 0;
  for (double alpha : {1.2, 1.4, 1.6, 1.8, 2.0}) {
    for (double q : {1.0, 2.0, 3.0}) {
      for (double p : {1.5, 3.0, 4.2, 5.0, 8.0}) {
        DichotomyParams params;
        params.alpha = alpha;
        params.q = q;
        const double pc = 1.0 + alpha * q;
        const bool exists = q > 1.0 ? p <= pc + 1e-12 : p < pc - 1e-12;
        const auto v = classify(GrowthFunction::power(p), params, Domain::ball);
        ++cases;
        if (v.verdict != (exists ? Verdict::local_existence : Verdict::non_existence)) ++disagreements;
      }
    }
  }
  const double corpus[12][3] = {{1, 0, 0},   {1, 1, 0},    {1, 2, 0}, {1, 2.5, 0},
                                {1, 3, 0},   {1, 2.5, -2}, {1, 2.5, 1}, {1, 2, 1},
                                {1, 0.5, 0}, {1, 1, -1},   {1, 4, 0}, {1, 2.5, -3}};
  int passes = 0;
  DichotomyParams l1;
  l1.alpha = 1.5;
  l1.q = 1.0;
  for (const auto& c : corpus) {
    if (equivalence_check(GrowthFunction::power_log({{c[0], c[1], c[2]}}), l1).pass) ++passes;
  }
  DichotomyParams whole;
  whole.alpha = 1.5;
  whole.q = 2.0;
  const auto ws = classify(GrowthFunction::parse("powerlog:1,0.5,0+powerlog:1,2,0"), whole, Domain::whole_space);
  const bool small_s_flagged = ws.verdict == Verdict::non_existence && ws.small_s &&
                               ws.small_s->outcome == TrendOutcome::infinite;
  res.passed = disagreements == 0 && passes == 12 && small_s_flagged;
  Detail d;
  d << "power sweep " << disagreements << " disagreements of " << cases << "; equivalence " << passes
    << "/12 PASS; sqrt(s)+s^2 whole space: " << to_string(ws.verdict) << " (small-s "
    << (ws.small_s ? to_string(ws.small_s->outcome) : "n/a") << ")";
  res.detail = d.str();
  return res;
}

// ---------------------------------------------------------------- 9
CriterionResult escalation() {
  CriterionResult res{9, "non-existence escalation", true, ""};
  const double alpha = 1.5;
  const auto op = assemble(Grid1D::dirichlet(1.0, 1799), alpha);
  const double r = 0.1;
  const auto times = node_aligned_times(op.grid(), alpha, r / 10.0, r, 12);
  const double nu_hat = verify_uniform_lower_bound(op, r, r, times).c_hat;
  DichotomyParams params;
  params.alpha = alpha;
  params.q = 2.0;
  const auto f = GrowthFunction::power(6.0);
  const auto spec = build_layers_thm33(f, params, 3, nu_hat, 1.0);
  const auto rows = escalation_experiment(op, f, spec, {1, 2, 3}, SolverConfig{2e-9, 2e-11, 1e12});
  bool increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) increasing = increasing && rows[i].sup_norm_lq > rows[i - 1].sup_norm_lq;
  bool critical_refused = false;
  std::size_t refused_at = 0;
  try {
    build_layers_thm33(GrowthFunction::power(4.0), params, 3, nu_hat, 1.0);
  } catch (const LayerConstructionError& e) {
    critical_refused = true;
    refused_at = e.failing_layer();
  }
  res.passed = increasing && critical_refused;
  Detail d;
  d << "nu_hat " << fmt(nu_hat) << "; s^6 sup L2 norms:";
  for (const auto& row : rows) {
    d << " K=" << row.K << ':' << fmt(row.sup_norm_lq);
    if (row.t_star) d << " (t_star " << fmt(*row.t_star) << ")";
  }
  d << (increasing ? " strictly increasing" : " NOT increasing") << "; s^4 "
    << (critical_refused ? "refused at layer " + std::to_string(refused_at) : std::string("built layers"));
  res.detail = d.str();
  return res;
}

}  // namespace

std::string render_line(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + (r.passed ? " PASS " : " FAIL ") + r.name + ": " + r.detail;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  try {
    switch (id) {
      case 1: return kernel_oracles();
      case 2: return two_sided_bounds();
      case 3: return dirichlet_operator(options);
      case 4: return lemma_constants();
      case 5: return smoothing();
      case 6: return solver_oracle();
      case 7: return monotone_iteration();
      case 8: return classifier();
      case 9: return escalation();
      default: break;
    }
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
  throw PreconditionError("acceptance: no criterion " + std::to_string(id));
}

bool AcceptanceReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::string AcceptanceReport::render() const {
  std::string out;
  for (const auto& r : results) out += render_line(r) + "\n";
  return out;
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options, std::ostream* progress) {
  AcceptanceReport first, second;
  for (int id = 1; id <= 9; ++id) {
    first.results.push_back(run_criterion(id, options));
    if (progress) *progress << render_line(first.results.back()) << std::endl;
  }
  for (int id = 1; id <= 9; ++id) second.results.push_back(run_criterion(id, options));
  const bool identical = first.render() == second.render();
  CriterionResult det{10, "determinism", identical,
                      identical ? "second run of criteria 1-9 byte-identical"
                                : "second run of criteria 1-9 differs"};
  if (progress) *progress << render_line(det) << std::endl;
  first.results.push_back(det);
  return first;
}

}  // namespace fracheat
