#include "cvdistill/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "cvdistill/errors.hpp"

namespace cvdistill {

namespace {

Eigen::MatrixXcd conjugate_basis(int n) {
  const Complex i{0.0, 1.0};
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 0; m < n; m += 2) {
    t(m, m) = 1.0;
    t(m, m + 1) = i;
    t(m + 1, m) = 1.0;
    t(m + 1, m + 1) = -i;
  }
  return t;
}

}  // namespace

Eigen::MatrixXd real_quadratic_form(const Eigen::MatrixXcd& kernel) {
  const auto n = kernel.rows();
  if (n != kernel.cols() || n % 2 != 0 || n == 0)
    throw std::invalid_argument("kernel must be square with an even dimension");
  const Eigen::MatrixXcd t = conjugate_basis(static_cast<int>(n));
  Eigen::MatrixXcd m = t.transpose() * kernel * t;
  m = 0.5 * (m + m.transpose()).eval();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (m.imag().cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw SingularKernelError("kernel has no real quadratic form");
  return m.real();
}

MomentTable::MomentTable(const Eigen::MatrixXcd& kernel, std::span<const int> bounds)
    : bounds_(bounds.begin(), bounds.end()) {
  const int n = static_cast<int>(kernel.rows());
  if (static_cast<int>(bounds_.size()) != n)
    throw std::invalid_argument("one exponent bound per variable is required");

  const Eigen::MatrixXd m = real_quadratic_form(kernel);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw SingularKernelError("Gaussian kernel is not integrable");
  const Eigen::MatrixXd lower = llt.matrixL();
  double log_det = 0.0;
  for (int k = 0; k < n; ++k) log_det += 2.0 * std::log(lower(k, k));
  // (1/pi)^modes * (2 pi)^modes / sqrt(det M)
  norm_ = std::exp(0.5 * n * std::log(2.0) - 0.5 * log_det);

  const Eigen::MatrixXd cov_real = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::MatrixXcd t = conjugate_basis(n);
  cov_ = t * cov_real.cast<Complex>() * t.transpose();

  strides_.assign(n, 1);
  std::size_t size = 1;
  for (int k = n - 1; k >= 0; --k) {
    if (bounds_[k] < 0) throw std::invalid_argument("negative exponent bound");
    strides_[k] = size;
    size *= static_cast<std::size_t>(bounds_[k] + 1);
  }
  table_.assign(size, Complex{});
  table_[0] = 1.0;

  std::vector<int> beta(n, 0);
  for (std::size_t lin = 1; lin < size; ++lin) {
    for (int k = n - 1; k >= 0; --k) {
      if (++beta[k] <= bounds_[k]) break;
      beta[k] = 0;
    }
    int total = 0;
    for (int b : beta) total += b;
    if (total % 2 != 0) continue;
    int j = 0;
    while (beta[j] == 0) ++j;
    const std::size_t gamma = lin - strides_[j];
    Complex acc{};
    for (int k = 0; k < n; ++k) {
      const int gk = beta[k] - (k == j ? 1 : 0);
      if (gk > 0) acc += cov_(j, k) * static_cast<double>(gk) * table_[gamma - strides_[k]];
    }
    table_[lin] = acc;
  }
}

std::size_t MomentTable::offset(std::span<const int> exps) const {
  if (exps.size() != bounds_.size()) throw std::invalid_argument("exponent arity mismatch");
  std::size_t off = 0;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] < 0 || exps[k] > bounds_[k])
      throw std::out_of_range("exponent outside the moment table bounds");
    off += strides_[k] * static_cast<std::size_t>(exps[k]);
  }
  return off;
}

Complex MomentTable::moment(std::span<const int> exps) const { return table_[offset(exps)]; }

Complex gaussian_monomial_integral(const GaussianKernel& kernel, const MultiIndex& alpha) {
  const MomentTable table(Eigen::MatrixXcd(kernel.quad), alpha.e);
  return table.integral(alpha.e);
}

}  // namespace cvdistill
