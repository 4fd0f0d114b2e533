#include "cvdistill/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvdistill/errors.hpp"

namespace cvdistill {

JacobiResult hermitian_eigenvalues(std::span<const std::complex<double>> a, std::size_t n,
                                   const JacobiOptions& opts) {
  if (a.size() != n * n) throw std::invalid_argument("matrix size does not match dimension");
  const simd::KernelTable& kern = opts.kernels ? *opts.kernels : simd::active();

  std::vector<double> re(n * n);
  std::vector<double> im(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    re[k] = a[k].real();
    im[k] = a[k].imag();
  }
  // Symmetrize so the row-only update stays consistent.
  for (std::size_t p = 0; p < n; ++p) {
    im[p * n + p] = 0.0;
    for (std::size_t q = p + 1; q < n; ++q) {
      const double r = 0.5 * (re[p * n + q] + re[q * n + p]);
      const double i = 0.5 * (im[p * n + q] - im[q * n + p]);
      re[p * n + q] = re[q * n + p] = r;
      im[p * n + q] = i;
      im[q * n + p] = -i;
    }
  }

  const double frob = std::sqrt(kern.norm2(n * n, re.data(), im.data()));
  JacobiResult result;
  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      acc += kern.norm2(p, re.data() + p * n, im.data() + p * n);
      acc += kern.norm2(n - p - 1, re.data() + p * n + p + 1, im.data() + p * n + p + 1);
    }
    return std::sqrt(acc);
  };

  bool converged = frob == 0.0;
  for (int sweep = 0; !converged && sweep < opts.max_sweeps; ++sweep) {
    if (off_norm() <= opts.tol * frob) {
      converged = true;
      break;
    }
    result.sweeps = sweep + 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double gr = re[p * n + q];
        const double gi = im[p * n + q];
        const double g = std::hypot(gr, gi);
        if (g <= 1e-300) continue;
        const double app = re[p * n + p];
        const double aqq = re[q * n + q];
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        kern.rotate_rows(n, c, s, gr / g, gi / g, re.data() + p * n, im.data() + p * n,
                         re.data() + q * n, im.data() + q * n);
        for (std::size_t k = 0; k < n; ++k) {
          re[k * n + p] = re[p * n + k];
          im[k * n + p] = -im[p * n + k];
          re[k * n + q] = re[q * n + k];
          im[k * n + q] = -im[q * n + k];
        }
        re[p * n + p] = app - t * g;
        re[q * n + q] = aqq + t * g;
        im[p * n + p] = im[q * n + q] = 0.0;
        re[p * n + q] = re[q * n + p] = 0.0;
        im[p * n + q] = im[q * n + p] = 0.0;
      }
    }
  }
  if (!converged && off_norm() > opts.tol * frob)
    throw NumericError("Jacobi eigensolver did not converge");

  result.eigenvalues.resize(n);
  for (std::size_t p = 0; p < n; ++p) result.eigenvalues[p] = re[p * n + p];
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

}  // namespace cvdistill
