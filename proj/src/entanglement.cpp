#include "cvdistill/entanglement.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cvdistill/errors.hpp"
#include "cvdistill/moments.hpp"

namespace cvdistill {

namespace {

Complex coefficient(const Polynomial& poly, const MultiIndex& idx) {
  const auto it = poly.find(idx);
  return it == poly.end() ? Complex{} : it->second;
}

Eigen::Matrix4cd conjugate_basis() {
  const Complex i{0.0, 1.0};
  Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
  t(0, 0) = t(1, 0) = 1.0;
  t(0, 1) = i;
  t(1, 1) = -i;
  t(2, 2) = t(3, 2) = 1.0;
  t(2, 3) = i;
  t(3, 3) = -i;
  return t;
}

}  // namespace

double CovarianceMatrix::min_symplectic_eigenvalue() const {
  const double delta = a().determinant() + b().determinant() + 2.0 * c().determinant();
  const double disc = std::max(0.0, delta * delta - 4.0 * sigma.determinant());
  return std::sqrt(std::max(0.0, 0.5 * (delta - std::sqrt(disc))));
}

FockDensityMatrix partial_transpose(const FockDensityMatrix& rho) {
  FockDensityMatrix out(rho.n_trunc());
  const int d = rho.n_trunc() + 1;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out.at(i, j, k, l) = rho.at(k, j, i, l);
  return out;
}

double log_negativity(const FockDensityMatrix& rho, const JacobiOptions& opts) {
  const FockDensityMatrix pt = partial_transpose(rho);
  const JacobiResult eig = hermitian_eigenvalues(pt.data(), pt.dim(), opts);
  double norm1 = 0.0;
  for (double lambda : eig.eigenvalues) norm1 += std::abs(lambda);
  if (norm1 <= 0.0) return 0.0;
  return std::max(0.0, std::log2(norm1));
}

CovarianceMatrix covariance_from_chi(const PolyGaussianChi& state) {
  if (std::abs(state.trace() - Complex{1.0}) > 1e-9)
    throw std::invalid_argument("covariance requires a normalized state");
  for (int j = 0; j < 4; ++j)
    if (std::abs(coefficient(state.poly, MultiIndex{}.plus(j))) > 1e-10)
      throw std::invalid_argument("state has nonzero first moments");

  // Second-order part of chi in v: 1/2 v^T G v.
  Eigen::Matrix4cd g = -state.kernel.quad;
  for (int j = 0; j < 4; ++j) {
    g(j, j) += 2.0 * coefficient(state.poly, MultiIndex{}.plus(j, 2));
    for (int k = j + 1; k < 4; ++k) {
      const Complex c = coefficient(state.poly, MultiIndex{}.plus(j).plus(k));
      g(j, k) += c;
      g(k, j) += c;
    }
  }
  const Eigen::Matrix4cd t = conjugate_basis();
  const Eigen::Matrix4d hess = (t.transpose() * g * t).real();

  // chi = <exp(i w^T R)>, w = J u, so chi ~ 1 - 1/2 u^T (J^T sigma J) u.
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  const double r2 = std::numbers::sqrt2;
  j(0, 1) = r2;
  j(1, 0) = -r2;
  j(2, 3) = r2;
  j(3, 2) = -r2;
  const Eigen::Matrix4d j_inv = j.inverse();
  CovarianceMatrix cov;
  cov.sigma = -j_inv.transpose() * hess * j_inv;
  cov.sigma = 0.5 * (cov.sigma + cov.sigma.transpose()).eval();
  return cov;
}

double gaussian_log_negativity(const CovarianceMatrix& cov) {
  const double delta =
      cov.a().determinant() + cov.b().determinant() - 2.0 * cov.c().determinant();
  double disc = delta * delta - 4.0 * cov.sigma.determinant();
  if (disc < -1e-12) throw InvalidCovarianceError("negative symplectic discriminant");
  disc = std::max(disc, 0.0);
  const double d2 = 0.5 * (delta - std::sqrt(disc));
  if (!(d2 > 0.0)) throw InvalidCovarianceError("non-positive symplectic eigenvalue");
  return std::max(0.0, -std::log2(2.0 * std::sqrt(d2)));
}

double teleportation_fidelity(const PolyGaussianChi& state) {
  if (std::abs(state.trace() - Complex{1.0}) > 1e-9)
    throw std::invalid_argument("fidelity requires a normalized state");
  // xi1 = xi*, xi2 = xi: v = R w with w = (xi, xi*).
  Eigen::Matrix<Complex, 4, 2> r = Eigen::Matrix<Complex, 4, 2>::Zero();
  r(0, 1) = 1.0;
  r(1, 0) = 1.0;
  r(2, 0) = 1.0;
  r(3, 1) = 1.0;
  Eigen::MatrixXcd k = r.transpose() * state.kernel.quad * r;
  k(0, 1) += 1.0;
  k(1, 0) += 1.0;

  std::array<int, 2> bounds{};
  std::vector<std::pair<std::array<int, 2>, Complex>> terms;
  for (const auto& [idx, c] : state.poly) {
    const std::array<int, 2> e{idx.e[1] + idx.e[2], idx.e[0] + idx.e[3]};
    bounds[0] = std::max(bounds[0], e[0]);
    bounds[1] = std::max(bounds[1], e[1]);
    terms.push_back({e, c});
  }
  const MomentTable table(k, bounds);
  Complex f{};
  for (const auto& [e, c] : terms) f += c * table.integral(e);
  if (std::abs(f.imag()) > 1e-9 * std::max(1.0, std::abs(f.real())))
    throw NumericError("teleportation fidelity is not real");
  return f.real();
}

double success_probability(const PolyGaussianChi& unnormalized_state) {
  const Complex tr = unnormalized_state.trace();
  if (tr.real() < -1e-12) throw NumericError("negative success probability");
  return std::max(0.0, tr.real());
}

double separation_eta(double s, double n_th) {
  if (!(s > 0.0)) throw std::invalid_argument("separation requires s > 0");
  if (!(n_th >= 0.0)) throw std::invalid_argument("n_th must be >= 0");
  if (n_th == 0.0) return 0.0;
  return 2.0 * n_th / (2.0 * n_th + 1.0 - std::exp(-2.0 * s));
}

double separation_time(double s, double n_th, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("loss rate must be > 0");
  const double eta = separation_eta(s, n_th);
  if (eta == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(eta) / gamma;
}

double thermal_occupation(double wavelength_m, double temperature_k) {
  if (!(wavelength_m > 0.0) || !(temperature_k > 0.0))
    throw std::invalid_argument("wavelength and temperature must be positive");
  constexpr double kPlanck = 6.62607015e-34;
  constexpr double kLightSpeed = 299792458.0;
  constexpr double kBoltzmann = 1.380649e-23;
  const double x = kPlanck * kLightSpeed / (wavelength_m * kBoltzmann * temperature_k);
  return 1.0 / std::expm1(x);
}

}  // namespace cvdistill
