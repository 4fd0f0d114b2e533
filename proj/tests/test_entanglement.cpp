#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "cvdistill/entanglement.hpp"
#include "cvdistill/errors.hpp"
#include "cvdistill/quadrature.hpp"
#include "cvdistill/scenarios.hpp"

using namespace cvdistill;

namespace {

PolyGaussianChi channel_both(const PolyGaussianChi& chi, double eta, double n_th) {
  const ChannelParams ch(eta, n_th);
  return apply_thermal_channel(apply_thermal_channel(chi, Mode::One, ch), Mode::Two, ch);
}

double fidelity_quadrature(const PolyGaussianChi& state) {
  const auto rule = gauss_legendre(96, -9.0, 9.0);
  double sum = 0.0;
  for (std::size_t a = 0; a < rule.nodes.size(); ++a)
    for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
      const Complex xi(rule.nodes[a], rule.nodes[b]);
      sum += rule.weights[a] * rule.weights[b] *
             (evaluate_chi(state, std::conj(xi), xi) * std::exp(-std::norm(xi))).real();
    }
  return sum / M_PI;
}

}  // namespace

TEST(Covariance, TmsvBlocks) {
  for (double s : {0.0, 0.114, 0.403}) {
    const auto cov = covariance_from_chi(tmsv_chi(s));
    const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
    EXPECT_LT((cov.a() - 0.5 * std::cosh(2 * s) * id).norm(), 1e-14);
    EXPECT_LT((cov.b() - 0.5 * std::cosh(2 * s) * id).norm(), 1e-14);
    const Eigen::Matrix2d c = 0.5 * std::sinh(2 * s) * Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix();
    EXPECT_LT((cov.c() - c).norm(), 1e-14) << s;
    EXPECT_NEAR(cov.min_symplectic_eigenvalue(), 0.5, 1e-12);
  }
}

TEST(Covariance, AfterSymmetricChannel) {
  const double s = 0.403, eta = 0.37, n_th = 0.1;
  const auto cov = covariance_from_chi(channel_both(tmsv_chi(s), eta, n_th));
  const double diag = 0.5 * (eta * std::cosh(2 * s) + (1 - eta) * (2 * n_th + 1));
  EXPECT_LT((cov.a() - diag * Eigen::Matrix2d::Identity()).norm(), 1e-14);
  EXPECT_LT((cov.b() - diag * Eigen::Matrix2d::Identity()).norm(), 1e-14);
  EXPECT_NEAR(cov.c()(0, 0), 0.5 * eta * std::sinh(2 * s), 1e-14);
  EXPECT_NEAR(cov.c()(1, 1), -0.5 * eta * std::sinh(2 * s), 1e-14);
  EXPECT_NEAR(cov.c()(0, 1), 0.0, 1e-15);
}

TEST(Covariance, VacuumAndNonGaussianStates) {
  const auto vac = covariance_from_chi(vacuum_chi());
  EXPECT_LT((vac.sigma - 0.5 * Eigen::Matrix4d::Identity()).norm(), 1e-15);

  // single photon in mode 1: <x^2> = 3/2
  const auto one = normalize(apply_coherent_op(vacuum_chi(), Mode::One, CoherentOp::addition())).state;
  const auto c1 = covariance_from_chi(one);
  EXPECT_NEAR(c1.sigma(0, 0), 1.5, 1e-14);
  EXPECT_NEAR(c1.sigma(1, 1), 1.5, 1e-14);
  EXPECT_NEAR(c1.sigma(2, 2), 0.5, 1e-14);

  for (auto strategy : {Strategy::SubtractBefore, Strategy::CoherentAfter}) {
    const auto st = run_strategy({strategy, 0.3, ChannelParams(0.5, 0.1)}, 0.4).state;
    const auto cov = covariance_from_chi(st);
    EXPECT_LT((cov.sigma - cov.sigma.transpose()).norm(), 1e-14);
    EXPECT_GE(cov.min_symplectic_eigenvalue(), 0.5 - 1e-9);
  }
}

TEST(Covariance, RejectsUnnormalizedStates) {
  const auto raw = apply_coherent_op(tmsv_chi(0.2), Mode::One, CoherentOp::subtraction());
  EXPECT_THROW(covariance_from_chi(raw), std::invalid_argument);
}

TEST(GaussianNegativity, ClosedForms) {
  EXPECT_NEAR(gaussian_log_negativity(covariance_from_chi(vacuum_chi())), 0.0, 1e-12);
  for (double s : {0.029, 0.114, 0.403})
    EXPECT_NEAR(gaussian_log_negativity(covariance_from_chi(tmsv_chi(s))), 2 * s / std::log(2.0), 1e-12);
  EXPECT_NEAR(gaussian_log_negativity(covariance_from_chi(tmsv_chi(0.114))), 0.3290, 1e-4);
}

TEST(GaussianNegativity, VanishesAtSeparation) {
  for (double s : {0.029, 0.114, 0.403}) {
    const double eta = separation_eta(s, 0.1);
    EXPECT_NEAR(gaussian_log_negativity(covariance_from_chi(channel_both(tmsv_chi(s), eta, 0.1))), 0.0, 1e-9);
  }
}

TEST(GaussianNegativity, ZeroCrossingBracketedAtSeparation) {
  const double s = 0.114, n_th = 0.1;
  auto en = [&](double eta) {
    return gaussian_log_negativity(covariance_from_chi(channel_both(tmsv_chi(s), eta, n_th)));
  };
  double lo = 0.05, hi = 1.0;
  ASSERT_EQ(en(lo), 0.0);
  ASSERT_GT(en(hi), 0.0);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (en(mid) > 0.0 ? hi : lo) = mid;
  }
  EXPECT_NEAR(0.5 * (lo + hi), separation_eta(s, n_th), 1e-6);
}

TEST(GaussianNegativity, RejectsUnphysicalCovariance) {
  CovarianceMatrix cov;
  cov.sigma = Eigen::Matrix4d::Identity() * 0.5;
  cov.sigma(0, 2) = cov.sigma(2, 0) = 3.0;
  EXPECT_THROW(gaussian_log_negativity(cov), InvalidCovarianceError);
}

TEST(PartialTranspose, InvolutionAndProductStates) {
  const auto st = run_strategy({Strategy::CoherentBefore, 0.3, ChannelParams(0.6, 0.1)}, 0.5).state;
  const auto rho = fock_matrix(st, 4);
  const auto back = partial_transpose(partial_transpose(rho));
  for (std::size_t k = 0; k < rho.data().size(); ++k) EXPECT_EQ(rho.data()[k], back.data()[k]);
  EXPECT_TRUE(partial_transpose(rho).is_hermitian(1e-12));

  const auto prod = fock_matrix(thermal_product_chi(0.2, 0.4), 4);
  EXPECT_EQ(log_negativity(prod), 0.0);
}

TEST(PartialTranspose, TmsvIsNpt) {
  const auto pt = partial_transpose(fock_matrix(tmsv_chi(0.403), 5));
  std::vector<Complex> buf(pt.data().begin(), pt.data().end());
  EXPECT_LT(hermitian_eigenvalues(buf, pt.dim()).eigenvalues.front(), 0.0);
}

TEST(LogNegativity, TmsvTruncationFromBelow) {
  const double exact = 2 * 0.403 / std::log(2.0);
  const double en10 = log_negativity(fock_matrix(tmsv_chi(0.403), 10));
  EXPECT_NEAR(en10, exact, 1e-3);
  EXPECT_NEAR(exact, 1.1628, 1e-4);
  double prev = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const double en = log_negativity(fock_matrix(tmsv_chi(0.403), n));
    EXPECT_GE(en, prev - 1e-12);
    EXPECT_LE(en, exact + 1e-12);
    prev = en;
  }
}

TEST(LogNegativity, IncreasesWithTransmissivity) {
  double prev = -1.0;
  for (double eta : {0.8, 0.85, 0.9, 0.95, 1.0}) {
    const double en = log_negativity(fock_matrix(channel_both(tmsv_chi(0.029), eta, 0.1), 8));
    EXPECT_GT(en, prev);
    prev = en;
  }
  EXPECT_GT(log_negativity(fock_matrix(channel_both(tmsv_chi(0.029), 0.85, 0.1), 8)), 0.0);
}

TEST(Fidelity, ClosedForms) {
  EXPECT_NEAR(teleportation_fidelity(vacuum_chi()), 0.5, 1e-12);
  for (double s : {0.029, 0.114, 0.403})
    EXPECT_NEAR(teleportation_fidelity(tmsv_chi(s)), 1.0 / (1.0 + std::exp(-2 * s)), 1e-12);
  EXPECT_NEAR(teleportation_fidelity(tmsv_chi(0.403)), 0.691, 1e-3);
}

TEST(Fidelity, MatchesTwoDimensionalQuadrature) {
  for (auto strategy : {Strategy::NoOp, Strategy::SubtractAfter, Strategy::CoherentBefore,
                        Strategy::CoherentAfter}) {
    const auto st = run_strategy({strategy, 0.25, ChannelParams(0.55, 0.1)}, 0.45).state;
    const double f = teleportation_fidelity(st);
    EXPECT_NEAR(f, fidelity_quadrature(st), 1e-9) << to_string(strategy);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(SuccessProbability, SubtractionMatchesFockSum) {
  const double s = 0.029;
  const auto raw = apply_coherent_op(apply_coherent_op(tmsv_chi(s), Mode::One, CoherentOp::subtraction()),
                                     Mode::Two, CoherentOp::subtraction());
  const double th2 = std::tanh(s) * std::tanh(s);
  double expected = 0.0;
  for (int n = 1; n < 200; ++n) expected += n * n * std::pow(th2, n);
  expected /= std::cosh(s) * std::cosh(s);
  EXPECT_NEAR(success_probability(raw) / expected, 1.0, 1e-12);
  EXPECT_NEAR(success_probability(raw), 8.4e-4, 0.05e-4);
  EXPECT_EQ(success_probability(apply_coherent_op(vacuum_chi(), Mode::One, CoherentOp::subtraction())), 0.0);
}

TEST(Separation, Thresholds) {
  EXPECT_NEAR(separation_eta(0.029, 0.1), 0.780, 5e-4);
  EXPECT_NEAR(separation_eta(0.114, 0.1), 0.495, 5e-4);
  EXPECT_EQ(separation_eta(0.1, 0.0), 0.0);
  EXPECT_LT(separation_eta(0.1, 1e-9), 1e-7);
  EXPECT_NEAR(separation_time(0.029, 0.1, 2.0), -std::log(separation_eta(0.029, 0.1)) / 2.0, 1e-15);
  EXPECT_EQ(separation_time(0.1, 0.0, 1.0), std::numeric_limits<double>::infinity());
  const double s = 0.2, n = 0.05;
  EXPECT_NEAR(separation_time(s, n, 1.0), std::log(1 + (1 - std::exp(-2 * s)) / (2 * n)), 1e-14);
}

TEST(ThermalOccupation, RoomTemperature) {
  // CODATA 2018 constants; independent evaluation gives 2.6571079e-20
  EXPECT_NEAR(thermal_occupation(1064e-9, 300.0) / 2.6571079e-20, 1.0, 1e-6);
  EXPECT_NEAR(thermal_occupation(20e-6, 300.0), 0.1, 0.002);
  EXPECT_LT(thermal_occupation(1064e-9, 1e-3), 1e-300);
  EXPECT_THROW(thermal_occupation(-1.0, 300.0), std::invalid_argument);
}
