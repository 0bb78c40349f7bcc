#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fracheat/criteria.hpp"
#include "fracheat/engine.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/grid.hpp"
#include "fracheat/growth.hpp"
#include "fracheat/mild_solver.hpp"

namespace fracheat {

/// Stacked-indicator data that cannot be built (or resolved) past some layer.
class LayerConstructionError : public PreconditionError {
 public:
  LayerConstructionError(const std::string& what, std::size_t layer)
      : PreconditionError(what), layer_(layer) {}
  std::size_t failing_layer() const noexcept { return layer_; }

 private:
  std::size_t layer_;
};

enum class ConstructionKind { lq_ball, l1_ball, lq_whole_space };
const char* to_string(ConstructionKind k);

/// height · χ_{radius}(· - center)
struct Layer {
  std::size_t k = 0;
  double level = 0.0;  ///< φ_k, φ_{ξ_n} or s_n
  double height = 0.0;
  double radius = 0.0;
  double center = 0.0;
  std::size_t xi = 0;      ///< ξ_n (L¹ construction only)
  std::size_t k_n = 0;     ///< last sequence index counted for layer n (L¹ only)
  double schedule = 0.0;   ///< n^{-αp} Σ_{k0 <= k <= k_n} f(s_k) s_k^{-p} (L¹ only)
};

struct StackedIndicatorSpec {
  ConstructionKind kind = ConstructionKind::lq_ball;
  double alpha = 1.5;
  double q = 2.0;
  int d = 1;
  double eps = 0.0;
  double tau = 2.0;
  double nu_hat = 0.0;
  double c_hat = 0.0;
  std::vector<Layer> layers;
  /// Σ of the layer norms (triangle-inequality bound on ‖u0‖_{L^q}).
  double analytic_norm_bound = 0.0;

  std::size_t K() const { return layers.size(); }
  /// The first `count` layers, with the norm bound recomputed.
  StackedIndicatorSpec truncated(std::size_t count) const;
};

/// Largest dyadic ε with 3 r_1 <= R (r_k is non-increasing, so every layer fits).
/// Needs φ_1 (the first layer), so it is computed after the levels.
StackedIndicatorSpec build_layers_thm33(const GrowthFunction& f, const DichotomyParams& params,
                                        std::size_t K, double nu_hat, double R, double eps = 0.0);

/// Uses the greedy geometric witness s_k with φ_k = s_k / c_hat. Layer n has
/// k_n = smallest index with n^{-αp} Σ_{k0..k_n} f(s_k) s_k^{-p} >= n,
/// ξ_n = smallest index with φ_{ξ_n} >= α φ_{k_n + 1}, β_n = (n^α φ_{ξ_n})^{1/d}
/// and u_n = φ_{ξ_n} χ_{1/β_n}. Layers start at the first n with 1/β_n < R/3.
StackedIndicatorSpec build_layers_thm41(const GrowthFunction& f, const DichotomyParams& params,
                                        std::size_t N, double c_hat, double R);

/// s_n = largest dyadic <= n^{-α} with f(s_n) >= n^{2α} s_n, radius
/// n^{-αq/d} s_n^{-q/d}, height s_n/ν̂, centers on a lattice with spacing
/// above twice the largest radius.
StackedIndicatorSpec build_layers_whole_space(const GrowthFunction& f, const DichotomyParams& params,
                                              std::size_t N, double nu_hat);

/// Σ_k layer_k on the grid. Throws LayerConstructionError naming the first
/// layer with radius < 2h.
Field realize(const StackedIndicatorSpec& spec, const Grid1D& grid);

struct SolverConfig {
  double T = 1e-3;
  double dt = 1e-5;
  double blowup_cap = 1e12;
};

struct EscalationRow {
  std::size_t K = 0;
  std::size_t layers_built = 0;
  double u0_norm_lq = 0.0;
  double sup_norm_lq = 0.0;
  std::optional<double> t_star;
  TrajectoryStatus status = TrajectoryStatus::completed;
};

/// Realizes and solves each truncation of `spec` listed in K_list.
std::vector<EscalationRow> escalation_experiment(const SpectralEngine& engine,
                                                 const GrowthFunction& f,
                                                 const StackedIndicatorSpec& spec,
                                                 const std::vector<std::size_t>& K_list,
                                                 const SolverConfig& solver);

}  // namespace fracheat
