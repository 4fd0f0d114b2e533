#pragma once

// Data-parallel inner loops on split-complex (separate real/imaginary) arrays.
// Each kernel has a scalar reference version and, on x86-64, an AVX2+FMA
// version; `active()` picks one at first use based on the running CPU.

#include <cstddef>
#include <string_view>

namespace cvdistill::simd {

struct KernelTable {
  std::string_view name;

  /// y += a * x over n complex entries.
  void (*caxpy)(std::size_t n, double a_re, double a_im, const double* x_re, const double* x_im,
                double* y_re, double* y_im);

  /// Two-row complex Jacobi update with w = e^{i phi}:
  ///   x' = c x - s (w y),   y' = s x + c (w y).
  void (*rotate_rows)(std::size_t n, double c, double s, double w_re, double w_im, double* x_re,
                      double* x_im, double* y_re, double* y_im);

  /// sum_k |x_k|^2
  double (*norm2)(std::size_t n, const double* x_re, const double* x_im);
};

const KernelTable& scalar_kernels();
/// nullptr when not compiled in or unsupported by the running CPU.
const KernelTable* avx2_kernels();
const KernelTable& active();

}  // namespace cvdistill::simd
