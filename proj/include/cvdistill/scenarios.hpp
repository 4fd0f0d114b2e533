#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvdistill/chi.hpp"
#include "cvdistill/entanglement.hpp"

namespace cvdistill {

enum class Strategy { NoOp, SubtractBefore, SubtractAfter, CoherentBefore, CoherentAfter };

enum class Objective { Negativity, Fidelity };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);
std::string_view to_string(Objective o);
std::optional<Objective> parse_objective(std::string_view name);

constexpr bool is_coherent(Strategy s) {
  return s == Strategy::CoherentBefore || s == Strategy::CoherentAfter;
}
constexpr bool operates_before_channel(Strategy s) {
  return s == Strategy::SubtractBefore || s == Strategy::CoherentBefore;
}

struct ScenarioConfig {
  Strategy strategy = Strategy::NoOp;
  double s = 0.0;
  ChannelParams channel{1.0, 0.0};
  int n_trunc = 5;
  Objective objective = Objective::Negativity;
  std::optional<double> t_override;
};

struct StrategyOutput {
  PolyGaussianChi state;  // normalized
  double p_success = 1.0;
};

/// TMSV(s) through O1 O2 then N1 N2 (Before) or N1 N2 then O1 O2 (After).
/// `t` is used only by the coherent strategies.
StrategyOutput run_strategy(const ScenarioConfig& cfg, double t);

struct OptimizerOptions {
  double grid_step = 0.01;
  double refine_tol = 1e-4;
};

struct OptimizeResult {
  double t_opt = 1.0;
  double objective = 0.0;
  /// Every grid point had a vanishing objective; t_opt then maximizes p_success.
  bool zero_objective = false;
};

/// Objective value of one (cfg, t) point; zero-state points score 0.
double objective_value(const ScenarioConfig& cfg, double t);

/// Grid scan over t in [0,1] followed by golden-section refinement around the
/// best grid point. Ties go to the smaller t.
OptimizeResult optimize_t(const ScenarioConfig& cfg, const OptimizerOptions& opts = {});

struct SweepRecord {
  double eta = 0.0;
  double t_opt = 1.0;
  double e_n_fock = 0.0;
  double e_n_gauss = 0.0;
  double fidelity = 0.0;
  double p_success = 0.0;
  std::vector<std::string> flags;
};

/// One record per grid point in grid order. Per-point failures are recorded as
/// flags and leave the measures at zero.
std::vector<SweepRecord> sweep_eta(const ScenarioConfig& cfg, const std::vector<double>& eta_grid,
                                   const OptimizerOptions& opts = {});

/// Uniform grid of `points` values over [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int points);

/// Measures for one fixed t (no optimization).
SweepRecord evaluate_point(const ScenarioConfig& cfg, double t);

}  // namespace cvdistill
