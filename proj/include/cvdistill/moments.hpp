#pragma once

// Exact integrals of polynomial x Gaussian functions over one or two complex
// planes, with the measure prod_i d^2 xi_i / pi and d^2 xi = d(Re xi) d(Im xi).
//
// Moments E[v^a] of the complex-linear Gaussian variables v are generated by the
// Stein recursion E[v_j v^b] = sum_k S_jk b_k E[v^(b - e_k)], where S = E[v v^T]
// is obtained from the inverse of the real quadratic form. The table is filled
// in increasing linear index, which visits every lowered index before its parent.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cvdistill/chi.hpp"

namespace cvdistill {

class MomentTable {
 public:
  /// `kernel` is n x n (n = 2 * modes, variables ordered xi1, xi1*, xi2, xi2*),
  /// `bounds` the largest exponent per variable that will be queried.
  MomentTable(const Eigen::MatrixXcd& kernel, std::span<const int> bounds);

  int variables() const { return static_cast<int>(bounds_.size()); }
  /// E[v^a] under the normalized Gaussian.
  Complex moment(std::span<const int> exps) const;
  /// Integral of v^a exp(-1/2 v^T K v) with measure prod d^2 xi / pi.
  Complex integral(std::span<const int> exps) const { return norm_ * moment(exps); }
  /// Integral of the bare Gaussian.
  double normalization() const { return norm_; }
  const Eigen::MatrixXcd& covariance() const { return cov_; }

  /// Raw table access for hot loops: linear index of `exps`.
  std::size_t offset(std::span<const int> exps) const;
  std::span<const std::size_t> strides() const { return strides_; }
  const Complex* data() const { return table_.data(); }

 private:
  std::vector<int> bounds_;
  std::vector<std::size_t> strides_;
  std::vector<Complex> table_;
  Eigen::MatrixXcd cov_;
  double norm_ = 0.0;
};

/// Real quadratic form of a conjugate-pair kernel in (Re xi1, Im xi1, ...).
/// Throws SingularKernelError if the kernel does not map to a real form.
Eigen::MatrixXd real_quadratic_form(const Eigen::MatrixXcd& kernel);

Complex gaussian_monomial_integral(const GaussianKernel& kernel, const MultiIndex& alpha);

}  // namespace cvdistill
