#include <cmath>

#include <gtest/gtest.h>

#include "cvdistill/errors.hpp"
#include "cvdistill/scenarios.hpp"

using namespace cvdistill;

namespace {

ScenarioConfig make(Strategy strategy, double s, double eta, double n_th) {
  ScenarioConfig cfg;
  cfg.strategy = strategy;
  cfg.s = s;
  cfg.channel = ChannelParams(eta, n_th);
  return cfg;
}

double en_at(const ScenarioConfig& cfg, double t) {
  return log_negativity(fock_matrix(run_strategy(cfg, t).state, cfg.n_trunc));
}

}  // namespace

TEST(Names, RoundTrip) {
  for (auto s : {Strategy::NoOp, Strategy::SubtractBefore, Strategy::SubtractAfter, Strategy::CoherentBefore,
                 Strategy::CoherentAfter})
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  EXPECT_FALSE(parse_strategy("coherent").has_value());
  EXPECT_EQ(parse_objective("fidelity"), Objective::Fidelity);
  EXPECT_FALSE(parse_objective("entropy").has_value());
}

TEST(RunStrategy, NoOpAtUnitTransmissivityIsTmsv) {
  const auto out = run_strategy(make(Strategy::NoOp, 0.114, 1.0, 0.1), 0.3);
  const auto ref = tmsv_chi(0.114);
  EXPECT_EQ(out.p_success, 1.0);
  EXPECT_LT((out.state.kernel.quad - ref.kernel.quad).norm(), 1e-15);
  EXPECT_NEAR(std::abs(evaluate_chi(out.state, {0.3, 0.1}, {-0.2, 0.4}) -
                       evaluate_chi(ref, {0.3, 0.1}, {-0.2, 0.4})),
              0.0, 1e-15);
}

TEST(RunStrategy, SubtractOrderEquivalenceAtVacuumNoise) {
  for (double s : {0.029, 0.403})
    for (double eta : {0.2, 0.5, 0.8}) {
      const auto b = fock_matrix(run_strategy(make(Strategy::SubtractBefore, s, eta, 0.0), 1.0).state, 5);
      const auto a = fock_matrix(run_strategy(make(Strategy::SubtractAfter, s, eta, 0.0), 1.0).state, 5);
      for (std::size_t k = 0; k < a.data().size(); ++k) EXPECT_LT(std::abs(a.data()[k] - b.data()[k]), 1e-10);
    }
}

TEST(RunStrategy, SubtractionOfUnsqueezedVacuumFails) {
  EXPECT_THROW(run_strategy(make(Strategy::SubtractAfter, 0.0, 1.0, 0.0), 1.0), ZeroStateError);
}

TEST(RunStrategy, BeforeProbabilityIsFlat) {
  const double p0 = run_strategy(make(Strategy::SubtractBefore, 0.114, 1.0, 0.1), 1.0).p_success;
  for (double eta : {0.01, 0.3, 0.77})
    EXPECT_NEAR(run_strategy(make(Strategy::SubtractBefore, 0.114, eta, 0.1), 1.0).p_success, p0, 1e-15);
  const double c0 = run_strategy(make(Strategy::CoherentBefore, 0.114, 1.0, 0.1), 0.6).p_success;
  EXPECT_NEAR(run_strategy(make(Strategy::CoherentBefore, 0.114, 0.2, 0.1), 0.6).p_success, c0, 1e-15);
}

TEST(RunStrategy, CoherentBeatsSubtractionWithoutLoss) {
  auto cfg = make(Strategy::CoherentBefore, 0.029, 1.0, 0.1);
  const auto opt = optimize_t(cfg);
  const double sub = en_at(make(Strategy::SubtractBefore, 0.029, 1.0, 0.1), 1.0);
  EXPECT_GT(opt.objective, sub);
  EXPECT_NEAR(opt.objective, en_at(cfg, opt.t_opt), 1e-15);
}

TEST(Optimizer, AfterStrategyLimits) {
  const auto high = optimize_t(make(Strategy::CoherentAfter, 0.029, 0.99, 1e-5));
  EXPECT_LT(high.t_opt, 0.2);
  const auto low = optimize_t(make(Strategy::CoherentAfter, 0.029, 0.05, 1e-5));
  EXPECT_GT(low.t_opt, 0.8);
}

TEST(Optimizer, AfterStrategyDriftsTowardAddition) {
  double prev = 1.0;
  for (double eta : {0.05, 0.3, 0.6, 0.9, 0.99}) {
    const double t = optimize_t(make(Strategy::CoherentAfter, 0.114, eta, 1e-5)).t_opt;
    EXPECT_LT(t, prev) << eta;
    prev = t;
  }
  EXPECT_LT(optimize_t(make(Strategy::CoherentAfter, 0.403, 0.9, 1e-5)).t_opt, 0.05);
  EXPECT_GT(optimize_t(make(Strategy::CoherentAfter, 0.403, 0.05, 1e-5)).t_opt, 0.9);
}

TEST(Optimizer, RefinementPrecisionInvariance) {
  const auto cfg = make(Strategy::CoherentAfter, 0.114, 0.6, 0.1);
  const auto coarse = optimize_t(cfg);
  const auto fine = optimize_t(cfg, OptimizerOptions{0.01, 1e-8});
  EXPECT_NEAR(coarse.objective, fine.objective, 1e-6);
  EXPECT_FALSE(coarse.zero_objective);
}

TEST(Optimizer, ResultIsNotWorseThanGrid) {
  const auto cfg = make(Strategy::CoherentBefore, 0.114, 0.5, 0.1);
  const auto opt = optimize_t(cfg);
  for (int k = 0; k <= 100; ++k) EXPECT_GE(opt.objective + 1e-15, objective_value(cfg, 0.01 * k));
}

TEST(Optimizer, ZeroObjectiveFallsBackToMostProbable) {
  const auto cfg = make(Strategy::CoherentAfter, 0.029, 0.3, 0.1);
  const auto opt = optimize_t(cfg);
  EXPECT_TRUE(opt.zero_objective);
  EXPECT_EQ(opt.objective, 0.0);
  const double p = run_strategy(cfg, opt.t_opt).p_success;
  for (int k = 0; k <= 100; ++k) EXPECT_GE(p + 1e-15, run_strategy(cfg, 0.01 * k).p_success);
}

TEST(Optimizer, RejectsNonCoherentStrategies) {
  EXPECT_THROW(optimize_t(make(Strategy::SubtractAfter, 0.1, 0.5, 0.1)), std::invalid_argument);
}

TEST(Optimizer, FidelityObjective) {
  auto cfg = make(Strategy::CoherentAfter, 0.114, 0.8, 0.1);
  cfg.objective = Objective::Fidelity;
  const auto opt = optimize_t(cfg);
  EXPECT_NEAR(opt.objective, teleportation_fidelity(run_strategy(cfg, opt.t_opt).state), 1e-15);
  for (int k = 0; k <= 100; k += 5)
    EXPECT_GE(opt.objective + 1e-15, teleportation_fidelity(run_strategy(cfg, 0.01 * k).state));
}

TEST(Sweep, RecordsFollowGridOrder) {
  const auto grid = uniform_grid(0.1, 1.0, 4);
  auto cfg = make(Strategy::CoherentAfter, 0.114, 1.0, 0.1);
  const auto recs = sweep_eta(cfg, grid);
  ASSERT_EQ(recs.size(), grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(recs[k].eta, grid[k]);
    for (double v : {recs[k].t_opt, recs[k].e_n_fock, recs[k].e_n_gauss, recs[k].fidelity, recs[k].p_success})
      EXPECT_TRUE(std::isfinite(v));
  }
  EXPECT_EQ(recs[0].flags, std::vector<std::string>{"zero_objective"});
  EXPECT_TRUE(recs[3].flags.empty());
}

TEST(Sweep, FixedTOverridesOptimizer) {
  auto cfg = make(Strategy::CoherentBefore, 0.114, 1.0, 0.1);
  cfg.t_override = 0.25;
  const auto recs = sweep_eta(cfg, {0.5, 0.9});
  for (const auto& r : recs) EXPECT_EQ(r.t_opt, 0.25);
  const auto direct = evaluate_point(make(Strategy::CoherentBefore, 0.114, 0.9, 0.1), 0.25);
  EXPECT_EQ(recs[1].e_n_fock, direct.e_n_fock);
}

TEST(Sweep, ZeroStateIsFlaggedInRow) {
  const auto recs = sweep_eta(make(Strategy::SubtractBefore, 0.0, 1.0, 0.1), {0.5});
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].flags, std::vector<std::string>{"zero_state"});
  EXPECT_EQ(recs[0].e_n_fock, 0.0);
}

TEST(Sweep, NoOpThresholdNearSeparation) {
  const auto grid = uniform_grid(0.01, 1.0, 101);
  const auto recs = sweep_eta(make(Strategy::NoOp, 0.029, 1.0, 0.1), grid);
  for (const auto& r : recs) {
    if (r.eta < separation_eta(0.029, 0.1) - 1e-9) EXPECT_EQ(r.e_n_gauss, 0.0) << r.eta;
    if (r.eta > separation_eta(0.029, 0.1) + 1e-9) EXPECT_GT(r.e_n_gauss, 0.0) << r.eta;
    EXPECT_EQ(r.t_opt, 0.0);
    EXPECT_EQ(r.p_success, 1.0);
  }
}

TEST(Sweep, HighTemperatureBeforeSurvivesWhereAfterFails) {
  const auto b = sweep_eta(make(Strategy::CoherentBefore, 0.029, 1.0, 0.1), {0.5});
  const auto a = sweep_eta(make(Strategy::CoherentAfter, 0.029, 1.0, 0.1), {0.5});
  EXPECT_GT(b[0].e_n_fock, 0.0);
  EXPECT_EQ(a[0].e_n_fock, 0.0);
}

TEST(Sweep, LowTemperatureAfterDominates) {
  const auto grid = uniform_grid(0.01, 1.0, 101);
  const auto b = sweep_eta(make(Strategy::CoherentBefore, 0.029, 1.0, 1e-5), grid);
  const auto a = sweep_eta(make(Strategy::CoherentAfter, 0.029, 1.0, 1e-5), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_GE(a[k].e_n_fock, b[k].e_n_fock - 1e-12) << grid[k];
}

TEST(UniformGrid, Endpoints) {
  const auto g = uniform_grid(0.01, 1.0, 101);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_NEAR(g[50], 0.505, 1e-15);
  EXPECT_EQ(uniform_grid(0.2, 0.7, 1), std::vector<double>{0.7});
  EXPECT_THROW(uniform_grid(0.1, 0.2, 0), std::invalid_argument);
}
