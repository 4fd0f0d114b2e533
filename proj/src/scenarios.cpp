#include "cvdistill/scenarios.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "cvdistill/errors.hpp"

namespace cvdistill {

namespace {

constexpr std::array<std::pair<Strategy, std::string_view>, 5> kStrategyNames{{
    {Strategy::NoOp, "noop"},
    {Strategy::SubtractBefore, "subtract_before"},
    {Strategy::SubtractAfter, "subtract_after"},
    {Strategy::CoherentBefore, "coherent_before"},
    {Strategy::CoherentAfter, "coherent_after"},
}};

PolyGaussianChi apply_ops(const PolyGaussianChi& chi, const CoherentOp& op) {
  return apply_coherent_op(apply_coherent_op(chi, Mode::One, op), Mode::Two, op);
}

PolyGaussianChi apply_channels(const PolyGaussianChi& chi, const ChannelParams& ch) {
  return apply_thermal_channel(apply_thermal_channel(chi, Mode::One, ch), Mode::Two, ch);
}

ScenarioConfig at_eta(const ScenarioConfig& cfg, double eta) {
  ScenarioConfig out = cfg;
  out.channel = ChannelParams(eta, cfg.channel.n_th());
  return out;
}

double clamp_t(double t) { return std::min(1.0, std::max(0.0, t)); }

}  // namespace

std::string_view to_string(Strategy s) {
  for (const auto& [k, name] : kStrategyNames)
    if (k == s) return name;
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (const auto& [k, n] : kStrategyNames)
    if (n == name) return k;
  return std::nullopt;
}

std::string_view to_string(Objective o) {
  return o == Objective::Negativity ? "negativity" : "fidelity";
}

std::optional<Objective> parse_objective(std::string_view name) {
  if (name == "negativity") return Objective::Negativity;
  if (name == "fidelity") return Objective::Fidelity;
  return std::nullopt;
}

StrategyOutput run_strategy(const ScenarioConfig& cfg, double t) {
  const PolyGaussianChi initial = tmsv_chi(cfg.s);
  if (cfg.strategy == Strategy::NoOp) return {apply_channels(initial, cfg.channel), 1.0};

  const CoherentOp op = is_coherent(cfg.strategy) ? CoherentOp::from_t(t) : CoherentOp::subtraction();
  const PolyGaussianChi raw = operates_before_channel(cfg.strategy)
                                  ? apply_channels(apply_ops(initial, op), cfg.channel)
                                  : apply_ops(apply_channels(initial, cfg.channel), op);
  const double p = success_probability(raw);
  Normalized n = normalize(raw);
  return {std::move(n.state), p};
}

double objective_value(const ScenarioConfig& cfg, double t) {
  try {
    const StrategyOutput out = run_strategy(cfg, t);
    if (cfg.objective == Objective::Fidelity) return teleportation_fidelity(out.state);
    return log_negativity(fock_matrix(out.state, cfg.n_trunc));
  } catch (const ZeroStateError&) {
    return 0.0;
  }
}

OptimizeResult optimize_t(const ScenarioConfig& cfg, const OptimizerOptions& opts) {
  if (!is_coherent(cfg.strategy))
    throw std::invalid_argument("t optimization applies to coherent strategies only");
  if (!(opts.grid_step > 0.0 && opts.grid_step <= 1.0) || !(opts.refine_tol > 0.0))
    throw std::invalid_argument("invalid optimizer options");

  const int steps = static_cast<int>(std::lround(1.0 / opts.grid_step));
  double best_t = 0.0;
  double best = -1.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = clamp_t(k * opts.grid_step);
    const double v = objective_value(cfg, t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }

  if (best <= 0.0) {
    OptimizeResult fallback{0.0, 0.0, true};
    double best_p = -1.0;
    for (int k = 0; k <= steps; ++k) {
      const double t = clamp_t(k * opts.grid_step);
      double p = 0.0;
      try {
        p = run_strategy(cfg, t).p_success;
      } catch (const ZeroStateError&) {
      }
      if (p > best_p) {
        best_p = p;
        fallback.t_opt = t;
      }
    }
    return fallback;
  }

  // Golden-section maximization on the bracket around the best grid point.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = clamp_t(best_t - opts.grid_step);
  double hi = clamp_t(best_t + opts.grid_step);
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective_value(cfg, x1);
  double f2 = objective_value(cfg, x2);
  while (hi - lo > opts.refine_tol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective_value(cfg, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective_value(cfg, x2);
    }
  }
  OptimizeResult result{best_t, best, false};
  const double xm = 0.5 * (lo + hi);
  const double fm = objective_value(cfg, xm);
  for (const auto& [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}, std::pair{xm, fm}}) {
    if (f > result.objective || (f == result.objective && x < result.t_opt)) {
      result.objective = f;
      result.t_opt = x;
    }
  }
  return result;
}

SweepRecord evaluate_point(const ScenarioConfig& cfg, double t) {
  SweepRecord rec;
  rec.eta = cfg.channel.eta();
  rec.t_opt = cfg.strategy == Strategy::NoOp ? 0.0 : (is_coherent(cfg.strategy) ? t : 1.0);
  const StrategyOutput out = run_strategy(cfg, t);
  rec.p_success = out.p_success;
  rec.e_n_fock = log_negativity(fock_matrix(out.state, cfg.n_trunc));
  rec.e_n_gauss = gaussian_log_negativity(covariance_from_chi(out.state));
  rec.fidelity = teleportation_fidelity(out.state);
  return rec;
}

std::vector<SweepRecord> sweep_eta(const ScenarioConfig& cfg, const std::vector<double>& eta_grid,
                                   const OptimizerOptions& opts) {
  std::vector<SweepRecord> records;
  records.reserve(eta_grid.size());
  for (double eta : eta_grid) {
    const ScenarioConfig point = at_eta(cfg, eta);
    double t = 1.0;
    std::vector<std::string> flags;
    if (cfg.t_override) {
      t = *cfg.t_override;
    } else if (is_coherent(cfg.strategy)) {
      const OptimizeResult opt = optimize_t(point, opts);
      t = opt.t_opt;
      if (opt.zero_objective) flags.emplace_back("zero_objective");
    }
    SweepRecord rec;
    try {
      rec = evaluate_point(point, t);
    } catch (const ZeroStateError&) {
      rec = SweepRecord{};
      rec.eta = eta;
      rec.t_opt = t;
      flags.emplace_back("zero_state");
    } catch (const Error&) {
      rec = SweepRecord{};
      rec.eta = eta;
      rec.t_opt = t;
      flags.emplace_back("numeric_error");
    }
    rec.flags = std::move(flags);
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (points == 1) return {hi};
  std::vector<double> grid(points);
  for (int k = 0; k < points; ++k) grid[k] = lo + (hi - lo) * k / (points - 1);
  grid.back() = hi;
  return grid;
}

}  // namespace cvdistill
