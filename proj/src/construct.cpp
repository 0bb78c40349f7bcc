#include "fracheat/construct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracheat/numeric.hpp"

namespace fracheat {

const char* to_string(ConstructionKind k) {
  switch (k) {
    case ConstructionKind::lq_ball: return "lq_ball";
    case ConstructionKind::l1_ball: return "l1_ball";
    case ConstructionKind::lq_whole_space: return "lq_whole_space";
  }
  return "?";
}

namespace {

constexpr double kOverflowHorizon = 1e300;

double layer_norm(const Layer& layer, double q, int d) {
  return layer.height * std::pow(unit_ball_volume(d) * std::pow(layer.radius, d), 1.0 / q);
}

void refresh_bound(StackedIndicatorSpec& spec) {
  spec.analytic_norm_bound = 0.0;
  for (const auto& layer : spec.layers) spec.analytic_norm_bound += layer_norm(layer, spec.q, spec.d);
}

void check_alpha(const DichotomyParams& params) {
  if (!(params.alpha > 1.0 && params.alpha <= 2.0)) {
    throw PreconditionError("construct: alpha outside theorem hypotheses (need 1 < alpha <= 2)");
  }
  params.validate();
}

}  // namespace

StackedIndicatorSpec StackedIndicatorSpec::truncated(std::size_t count) const {
  if (count > layers.size()) {
    throw PreconditionError("construct: truncation " + std::to_string(count) + " exceeds " +
                            std::to_string(layers.size()) + " built layers");
  }
  StackedIndicatorSpec out = *this;
  out.layers.resize(count);
  refresh_bound(out);
  return out;
}

StackedIndicatorSpec build_layers_thm33(const GrowthFunction& f, const DichotomyParams& params,
                                        std::size_t K, double nu_hat, double R, double eps) {
  check_alpha(params);
  if (!(nu_hat > 0.0)) throw PreconditionError("construct: need nu_hat > 0");
  if (!(R > 0.0)) throw PreconditionError("construct: need R > 0");
  if (eps < 0.0) throw PreconditionError("construct: eps must be >= 0 (0 selects the default)");
  const double p = params.p_crit();
  const double q = params.q;
  const int d = params.d;
  StackedIndicatorSpec spec;
  spec.kind = ConstructionKind::lq_ball;
  spec.alpha = params.alpha;
  spec.q = q;
  spec.d = d;
  spec.tau = params.tau;
  spec.nu_hat = nu_hat;

  std::vector<double> phis;
  double prev = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    const double kk = static_cast<double>(k);
    const double target = std::exp(kk / q);
    double phi = std::exp2(std::ceil(std::log2(std::max(prev, kk))));
    bool found = false;
    while (phi <= kOverflowHorizon) {
      const double ratio = f(phi) * std::pow(phi, -p);
      if (!std::isfinite(ratio)) break;
      if (ratio >= target) {
        found = true;
        break;
      }
      phi *= 2.0;
    }
    if (!found) {
      throw LayerConstructionError("construct: no dyadic phi_" + std::to_string(k) +
                                       " with f(phi) >= phi^p e^{k/q} below 1e300",
                                   k);
    }
    phis.push_back(phi);
    prev = phi;
  }

  auto radius = [&](std::size_t k, double e) {
    return e * std::pow(phis[k - 1], -q / d) * std::pow(static_cast<double>(k), -params.alpha * q / d);
  };
  if (eps == 0.0) {
    eps = 1.0;
    if (!phis.empty()) {
      const double r1 = radius(1, 1.0);
      eps = std::exp2(std::floor(std::log2(R / (3.0 * r1))));
      while (3.0 * radius(1, eps) > R) eps *= 0.5;
    }
  }
  spec.eps = eps;
  for (std::size_t k = 1; k <= K; ++k) {
    Layer layer;
    layer.k = k;
    layer.level = phis[k - 1];
    layer.height = phis[k - 1] / nu_hat;
    layer.radius = radius(k, eps);
    if (3.0 * layer.radius > R * (1.0 + 1e-12)) {
      throw LayerConstructionError("construct: layer " + std::to_string(k) + " violates 3 r_k <= R", k);
    }
    spec.layers.push_back(layer);
  }
  refresh_bound(spec);
  return spec;
}

StackedIndicatorSpec build_layers_thm41(const GrowthFunction& f, const DichotomyParams& params,
                                        std::size_t N, double c_hat, double R) {
  check_alpha(params);
  if (!(c_hat > 0.0)) throw PreconditionError("construct: need c_hat > 0");
  if (!(R > 0.0)) throw PreconditionError("construct: need R > 0");
  const auto witness = geometric_sequence_witness(f, params);
  if (!witness.found) {
    throw PreconditionError("construct: no divergent geometric sequence; hypotheses unmet");
  }
  const double p = params.p_l1();
  const double alpha = params.alpha;
  const int d = params.d;
  const std::size_t count = witness.s.size();
  std::vector<double> phi(count);
  for (std::size_t k = 0; k < count; ++k) phi[k] = witness.s[k] / c_hat;
  const auto k0_it = std::find_if(phi.begin(), phi.end(), [](double v) { return v >= 1.0; });
  if (k0_it == phi.end()) throw LayerConstructionError("construct: no phi_k >= 1 on the horizon", 1);
  const auto k0 = static_cast<std::size_t>(k0_it - phi.begin());

  StackedIndicatorSpec spec;
  spec.kind = ConstructionKind::l1_ball;
  spec.alpha = alpha;
  spec.q = 1.0;
  spec.d = d;
  spec.tau = params.tau;
  spec.c_hat = c_hat;

  for (std::size_t n = 1; spec.layers.size() < N; ++n) {
    const double nn = static_cast<double>(n);
    const double weight = std::pow(nn, -alpha * p);
    double sum = 0.0;
    std::size_t k_n = count;
    for (std::size_t k = k0; k < count; ++k) {
      sum += witness.terms[k];
      if (weight * sum >= nn) {
        k_n = k;
        break;
      }
    }
    const std::string where = "construct: witness horizon exhausted at layer n=" + std::to_string(n);
    if (k_n + 1 >= count) throw LayerConstructionError(where, n);
    std::size_t xi = k_n + 1;
    while (xi < count && phi[xi] < alpha * phi[k_n + 1]) ++xi;
    if (xi >= count) throw LayerConstructionError(where, n);
    const double beta = std::pow(std::pow(nn, alpha) * phi[xi], 1.0 / d);
    if (!(1.0 / beta < R / 3.0)) continue;  // before n0
    Layer layer;
    layer.k = n;
    layer.level = phi[xi];
    layer.height = phi[xi];
    layer.radius = 1.0 / beta;
    layer.xi = xi + 1;
    layer.k_n = k_n + 1;
    layer.schedule = weight * sum;
    spec.layers.push_back(layer);
  }
  refresh_bound(spec);
  return spec;
}

StackedIndicatorSpec build_layers_whole_space(const GrowthFunction& f, const DichotomyParams& params,
                                              std::size_t N, double nu_hat) {
  check_alpha(params);
  if (!(nu_hat > 0.0)) throw PreconditionError("construct: need nu_hat > 0");
  const double alpha = params.alpha, q = params.q;
  const int d = params.d;
  StackedIndicatorSpec spec;
  spec.kind = ConstructionKind::lq_whole_space;
  spec.alpha = alpha;
  spec.q = q;
  spec.d = d;
  spec.nu_hat = nu_hat;
  for (std::size_t n = 1; n <= N; ++n) {
    const double nn = static_cast<double>(n);
    double s = std::exp2(std::floor(std::log2(std::pow(nn, -alpha))));
    const double target = std::pow(nn, 2.0 * alpha);
    bool found = false;
    for (; s >= 1.0 / kOverflowHorizon; s *= 0.5) {
      if (f(s) >= target * s) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw LayerConstructionError("construct: no dyadic s_" + std::to_string(n) +
                                       " with f(s) >= n^{2 alpha} s above 1e-300",
                                   n);
    }
    Layer layer;
    layer.k = n;
    layer.level = s;
    layer.height = s / nu_hat;
    layer.radius = std::pow(nn, -alpha * q / d) * std::pow(s, -q / d);
    spec.layers.push_back(layer);
  }
  double widest = 0.0;
  for (const auto& l : spec.layers) widest = std::max(widest, l.radius);
  const double spacing = 2.0 * widest * 1.25;
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    spec.layers[i].center = spacing * (static_cast<double>(i) - 0.5 * static_cast<double>(spec.layers.size() - 1));
  }
  refresh_bound(spec);
  return spec;
}

Field realize(const StackedIndicatorSpec& spec, const Grid1D& grid) {
  const double h = grid.spacing();
  std::vector<std::size_t> bad;
  for (const auto& layer : spec.layers) {
    if (layer.radius < 2.0 * h) bad.push_back(layer.k);
  }
  if (!bad.empty()) {
    std::string list;
    for (auto k : bad) list += (list.empty() ? "" : ", ") + std::to_string(k);
    throw LayerConstructionError("realize: layers below two cells (radius < 2h): " + list, bad.front());
  }
  Field out(grid);
  for (const auto& layer : spec.layers) {
    if (!grid.is_periodic() && std::abs(layer.center) + layer.radius > grid.half_width()) {
      throw LayerConstructionError("realize: layer " + std::to_string(layer.k) + " leaves the domain",
                                   layer.k);
    }
    out += layer.height * indicator(grid, layer.radius, layer.center);
  }
  return out;
}

std::vector<EscalationRow> escalation_experiment(const SpectralEngine& engine,
                                                 const GrowthFunction& f,
                                                 const StackedIndicatorSpec& spec,
                                                 const std::vector<std::size_t>& K_list,
                                                 const SolverConfig& solver) {
  // Realize every truncation first so an unresolvable layer refuses the whole run.
  std::vector<Field> data;
  for (auto K : K_list) data.push_back(realize(spec.truncated(K), engine.grid()));
  std::vector<EscalationRow> rows;
  for (std::size_t i = 0; i < K_list.size(); ++i) {
    NonlinearProblem problem(engine, f, data[i], spec.q, solver.T, solver.dt);
    problem.blowup_cap = solver.blowup_cap;
    const auto tr = solve(problem);
    EscalationRow row;
    row.K = K_list[i];
    row.layers_built = spec.K();
    row.u0_norm_lq = data[i].norm_lq(spec.q);
    row.sup_norm_lq = tr.sup_norm_lq();
    row.t_star = tr.t_star;
    row.status = tr.status;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fracheat
