#include <immintrin.h>

#include "cvdistill/simd/kernels.hpp"

namespace cvdistill::simd {

namespace {

void caxpy_avx2(std::size_t n, double a_re, double a_im, const double* x_re, const double* x_im,
                double* y_re, double* y_im) {
  const __m256d ar = _mm256_set1_pd(a_re);
  const __m256d ai = _mm256_set1_pd(a_im);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xr = _mm256_loadu_pd(x_re + k);
    const __m256d xi = _mm256_loadu_pd(x_im + k);
    __m256d yr = _mm256_loadu_pd(y_re + k);
    __m256d yi = _mm256_loadu_pd(y_im + k);
    yr = _mm256_fmadd_pd(ar, xr, yr);
    yr = _mm256_fnmadd_pd(ai, xi, yr);
    yi = _mm256_fmadd_pd(ar, xi, yi);
    yi = _mm256_fmadd_pd(ai, xr, yi);
    _mm256_storeu_pd(y_re + k, yr);
    _mm256_storeu_pd(y_im + k, yi);
  }
  for (; k < n; ++k) {
    y_re[k] += a_re * x_re[k] - a_im * x_im[k];
    y_im[k] += a_re * x_im[k] + a_im * x_re[k];
  }
}

void rotate_rows_avx2(std::size_t n, double c, double s, double w_re, double w_im, double* x_re,
                      double* x_im, double* y_re, double* y_im) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d wr = _mm256_set1_pd(w_re);
  const __m256d wi = _mm256_set1_pd(w_im);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d yr = _mm256_loadu_pd(y_re + k);
    const __m256d yi = _mm256_loadu_pd(y_im + k);
    const __m256d xr = _mm256_loadu_pd(x_re + k);
    const __m256d xi = _mm256_loadu_pd(x_im + k);
    const __m256d wyr = _mm256_fmsub_pd(wr, yr, _mm256_mul_pd(wi, yi));
    const __m256d wyi = _mm256_fmadd_pd(wr, yi, _mm256_mul_pd(wi, yr));
    _mm256_storeu_pd(x_re + k, _mm256_fnmadd_pd(vs, wyr, _mm256_mul_pd(vc, xr)));
    _mm256_storeu_pd(x_im + k, _mm256_fnmadd_pd(vs, wyi, _mm256_mul_pd(vc, xi)));
    _mm256_storeu_pd(y_re + k, _mm256_fmadd_pd(vs, xr, _mm256_mul_pd(vc, wyr)));
    _mm256_storeu_pd(y_im + k, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, wyi)));
  }
  for (; k < n; ++k) {
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

double norm2_avx2(std::size_t n, const double* x_re, const double* x_im) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xr = _mm256_loadu_pd(x_re + k);
    const __m256d xi = _mm256_loadu_pd(x_im + k);
    acc = _mm256_fmadd_pd(xr, xr, acc);
    acc = _mm256_fmadd_pd(xi, xi, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k) total += x_re[k] * x_re[k] + x_im[k] * x_im[k];
  return total;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", caxpy_avx2, rotate_rows_avx2, norm2_avx2};
  return table;
}

}  // namespace cvdistill::simd
