#pragma once

#include <Eigen/Dense>

#include "cvdistill/chi.hpp"
#include "cvdistill/fock.hpp"
#include "cvdistill/hermitian_eigen.hpp"

namespace cvdistill {

/// Symmetrized second moments over (x1, p1, x2, p2) with x = (a + a^dag)/sqrt2,
/// p = (a - a^dag)/(i sqrt2); the vacuum is I/2.
struct CovarianceMatrix {
  Eigen::Matrix4d sigma = 0.5 * Eigen::Matrix4d::Identity();

  Eigen::Matrix2d a() const { return sigma.block<2, 2>(0, 0); }
  Eigen::Matrix2d b() const { return sigma.block<2, 2>(2, 2); }
  Eigen::Matrix2d c() const { return sigma.block<2, 2>(0, 2); }
  /// Smallest symplectic eigenvalue; physical states have it >= 1/2.
  double min_symplectic_eigenvalue() const;
};

struct MeasureRecord {
  double e_n_fock = 0.0;
  double e_n_gauss = 0.0;
  double fidelity = 0.0;
  double p_success = 0.0;
};

/// (rho^{T_A})_{ij,kl} = rho_{kj,il}
FockDensityMatrix partial_transpose(const FockDensityMatrix& rho);

/// max(0, log2 ||rho^{T_A}||_1)
double log_negativity(const FockDensityMatrix& rho, const JacobiOptions& opts = {});

/// Exact second-order Taylor data of a normalized, zero-mean chi at the origin.
CovarianceMatrix covariance_from_chi(const PolyGaussianChi& state);

/// max(0, -log2(2 d~_-)) from the partially transposed symplectic spectrum.
double gaussian_log_negativity(const CovarianceMatrix& cov);

/// Coherent-state averaged fidelity (1/pi) \int d^2xi chi(xi*, xi) e^{-|xi|^2}.
double teleportation_fidelity(const PolyGaussianChi& state);

/// chi(0,0) of the raw pipeline output.
double success_probability(const PolyGaussianChi& unnormalized_state);

/// Transmissivity at which channel-evolved TMSV entanglement vanishes; 0 when n_th == 0.
double separation_eta(double s, double n_th);
/// -ln(separation_eta) / gamma; +inf when n_th == 0.
double separation_time(double s, double n_th, double gamma);

/// Bose-Einstein occupation 1/(exp(hc/(lambda k T)) - 1).
double thermal_occupation(double wavelength_m, double temperature_k);

}  // namespace cvdistill
