#include "cvdistill/simd/kernels.hpp"

namespace cvdistill::simd {

namespace {

void caxpy_scalar(std::size_t n, double a_re, double a_im, const double* x_re, const double* x_im,
                  double* y_re, double* y_im) {
  for (std::size_t k = 0; k < n; ++k) {
    y_re[k] += a_re * x_re[k] - a_im * x_im[k];
    y_im[k] += a_re * x_im[k] + a_im * x_re[k];
  }
}

void rotate_rows_scalar(std::size_t n, double c, double s, double w_re, double w_im, double* x_re,
                        double* x_im, double* y_re, double* y_im) {
  for (std::size_t k = 0; k < n; ++k) {
    const double wy_re = w_re * y_re[k] - w_im * y_im[k];
    const double wy_im = w_re * y_im[k] + w_im * y_re[k];
    const double xr = x_re[k];
    const double xi = x_im[k];
    x_re[k] = c * xr - s * wy_re;
    x_im[k] = c * xi - s * wy_im;
    y_re[k] = s * xr + c * wy_re;
    y_im[k] = s * xi + c * wy_im;
  }
}

double norm2_scalar(std::size_t n, const double* x_re, const double* x_im) {
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += x_re[k] * x_re[k] + x_im[k] * x_im[k];
  return acc;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", caxpy_scalar, rotate_rows_scalar, norm2_scalar};
  return table;
}

}  // namespace cvdistill::simd
